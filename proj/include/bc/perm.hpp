#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace bc {

using letter = std::uint32_t;

// Permutation of {0..n-1} acting on the right: (i)(p*q) = ((i)p)q.
// Letters are 1-based in text form only.
class perm {
public:
    perm() = default;
    explicit perm(std::size_t n) : img_(n)
    {
        std::iota(img_.begin(), img_.end(), letter{0});
    }
    explicit perm(std::vector<letter> images) : img_(std::move(images))
    {
        std::vector<bool> seen(img_.size());
        for (auto v : img_) {
            if (v >= img_.size() || seen[v]) throw bad_input("images do not form a bijection");
            seen[v] = true;
        }
    }

    static perm identity(std::size_t n) { return perm(n); }

    std::size_t degree() const noexcept { return img_.size(); }
    letter operator()(letter i) const { return img_[i]; }
    letter operator[](letter i) const { return img_[i]; }
    const std::vector<letter>& images() const noexcept { return img_; }

    bool operator==(const perm&) const = default;
    auto operator<=>(const perm&) const = default;

    bool is_identity() const
    {
        for (letter i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    perm operator*(const perm& q) const
    {
        check_degree(q);
        perm r;
        r.img_.resize(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) r.img_[i] = q.img_[img_[i]];
        return r;
    }

    perm& operator*=(const perm& q) { return *this = *this * q; }

    perm inverse() const
    {
        perm r;
        r.img_.resize(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<letter>(i);
        return r;
    }

    perm pow(long long e) const
    {
        perm base = e < 0 ? inverse() : *this;
        unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
        perm acc = identity(degree());
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    // p^h = h^-1 p h, so (i)h -> ((i)p)h.
    perm conj(const perm& h) const
    {
        check_degree(h);
        perm r;
        r.img_.resize(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) r.img_[h.img_[i]] = h.img_[img_[i]];
        return r;
    }

    std::vector<std::vector<letter>> cycles(bool with_fixed = false) const
    {
        std::vector<std::vector<letter>> out;
        std::vector<bool> seen(img_.size());
        for (letter i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            std::vector<letter> c;
            for (letter j = i; !seen[j]; j = img_[j]) {
                seen[j] = true;
                c.push_back(j);
            }
            if (c.size() > 1 || with_fixed) out.push_back(std::move(c));
        }
        return out;
    }

    // Sorted descending, fixed points included.
    std::vector<std::size_t> cycle_type() const
    {
        std::vector<std::size_t> t;
        for (auto& c : cycles(true)) t.push_back(c.size());
        std::sort(t.rbegin(), t.rend());
        return t;
    }

    std::size_t num_cycles() const { return cycles(true).size(); }

    std::size_t index() const { return degree() - num_cycles(); }

    std::uint64_t order() const
    {
        std::uint64_t o = 1;
        for (auto& c : cycles()) o = std::lcm(o, static_cast<std::uint64_t>(c.size()));
        return o;
    }

    std::size_t fixed_points() const
    {
        std::size_t f = 0;
        for (letter i = 0; i < img_.size(); ++i) f += img_[i] == i;
        return f;
    }

    perm restrict_to(const std::vector<letter>& support) const
    {
        std::vector<letter> pos(img_.size(), static_cast<letter>(-1));
        for (letter k = 0; k < support.size(); ++k) pos[support[k]] = k;
        std::vector<letter> r(support.size());
        for (letter k = 0; k < support.size(); ++k) {
            auto t = pos[img_[support[k]]];
            if (t == static_cast<letter>(-1)) throw invalid("support is not invariant");
            r[k] = t;
        }
        return perm(std::move(r));
    }

    std::string str() const
    {
        auto cs = cycles();
        if (cs.empty()) return "()";
        std::string s;
        for (auto& c : cs) {
            s += '(';
            for (std::size_t k = 0; k < c.size(); ++k) {
                if (k) s += ' ';
                s += std::to_string(c[k] + 1);
            }
            s += ')';
        }
        return s;
    }

    static perm parse(const std::string& text, std::size_t n)
    {
        std::vector<letter> img(n);
        std::iota(img.begin(), img.end(), letter{0});
        std::vector<bool> used(n);
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        };
        skip();
        while (i < text.size()) {
            if (text[i] != '(') throw bad_input("malformed cycle notation: " + text);
            ++i;
            std::vector<letter> cyc;
            for (;;) {
                skip();
                if (i >= text.size()) throw bad_input("unbalanced parenthesis: " + text);
                if (text[i] == ')') {
                    ++i;
                    break;
                }
                if (!std::isdigit(static_cast<unsigned char>(text[i])))
                    throw bad_input("malformed cycle notation: " + text);
                unsigned long long v = 0;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    v = v * 10 + static_cast<unsigned>(text[i] - '0');
                    if (v > n) throw bad_input("letter out of range in " + text);
                    ++i;
                }
                if (v < 1 || v > n) throw bad_input("letter out of range in " + text);
                if (used[v - 1]) throw bad_input("repeated letter in " + text);
                used[v - 1] = true;
                cyc.push_back(static_cast<letter>(v - 1));
            }
            for (std::size_t k = 0; k < cyc.size(); ++k) img[cyc[k]] = cyc[(k + 1) % cyc.size()];
            skip();
        }
        return perm(std::move(img));
    }

    static perm cycle(std::size_t n, std::initializer_list<letter> one_based)
    {
        std::vector<letter> img(n);
        std::iota(img.begin(), img.end(), letter{0});
        std::vector<letter> c(one_based);
        for (std::size_t k = 0; k < c.size(); ++k) img[c[k] - 1] = c[(k + 1) % c.size()] - 1;
        return perm(std::move(img));
    }

private:
    void check_degree(const perm& q) const
    {
        if (q.degree() != degree()) throw bad_input("degree mismatch");
    }

    std::vector<letter> img_;
};

// Every cycle length of s is a multiple of ord(t).
inline bool dominates(const perm& s, const perm& t)
{
    auto o = t.order();
    for (auto len : s.cycle_type())
        if (len % o != 0) return false;
    return true;
}

struct perm_hash {
    std::size_t operator()(const perm& p) const noexcept
    {
        std::size_t h = p.degree();
        for (auto v : p.images()) h = h * 1000003u ^ v;
        return h;
    }
};

}  // namespace bc
