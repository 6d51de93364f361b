#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "caps.hpp"
#include "error.hpp"
#include "perm.hpp"

namespace bc {

using orbit_list = std::vector<std::vector<letter>>;

// Stabilizer chain built by deterministic Schreier-Sims; base points are least moved letters.
class stab_chain {
public:
    explicit stab_chain(std::size_t n) : n_(n) {}

    std::size_t degree() const noexcept { return n_; }

    // Adds g; returns false if it was already a member.
    bool add(const perm& g)
    {
        auto [res, lvl] = strip(g, 0);
        if (res.is_identity()) return false;
        insert(0, lvl, res);
        complete(lvl);
        return true;
    }

    bool contains(const perm& g) const
    {
        if (g.degree() != n_) return false;
        return strip(g, 0).first.is_identity();
    }

    std::uint64_t order() const
    {
        std::uint64_t o = 1;
        for (auto& l : levels_) o *= l.orbit.size();
        return o;
    }

    std::vector<letter> base() const
    {
        std::vector<letter> b;
        for (auto& l : levels_) b.push_back(l.base);
        return b;
    }

    void for_each_element(const std::function<void(const perm&)>& fn) const
    {
        perm id = perm::identity(n_);
        walk(levels_.size(), id, fn);
    }

    // Transversal element mapping base of level 0 to b, if b is in the first basic orbit.
    std::optional<perm> transversal0(letter b) const
    {
        if (levels_.empty()) return b == 0 ? std::optional<perm>(perm::identity(n_)) : std::nullopt;
        auto& t = levels_[0].trans[b];
        if (!t) return std::nullopt;
        return *t;
    }

private:
    struct level {
        letter base;
        std::vector<perm> gens;
        std::vector<std::optional<perm>> trans;
        std::vector<letter> orbit;
        std::vector<std::size_t> done;
    };

    std::pair<perm, std::size_t> strip(perm g, std::size_t from) const
    {
        for (std::size_t i = from; i < levels_.size(); ++i) {
            auto& l = levels_[i];
            letter b = g(l.base);
            if (!l.trans[b]) return {g, i};
            g = g * l.trans[b]->inverse();
        }
        return {g, levels_.size()};
    }

    // Adds h to the strong generators of levels lo..hi and closes their orbits.
    void insert(std::size_t lo, std::size_t hi, const perm& h)
    {
        for (std::size_t i = lo; i <= hi; ++i) {
            if (i == levels_.size()) {
                letter b = 0;
                while (h(b) == b) ++b;
                level l;
                l.base = b;
                l.trans.assign(n_, std::nullopt);
                l.trans[b] = perm::identity(n_);
                l.orbit.push_back(b);
                l.done.push_back(0);
                levels_.push_back(std::move(l));
            }
            auto& l = levels_[i];
            l.gens.push_back(h);
            for (std::size_t p = 0; p < l.orbit.size(); ++p)
                for (auto& s : l.gens) {
                    letter c = s(l.orbit[p]);
                    if (!l.trans[c]) {
                        l.trans[c] = *l.trans[l.orbit[p]] * s;
                        l.orbit.push_back(c);
                        l.done.push_back(0);
                    }
                }
            check_cap();
        }
    }

    void complete(std::size_t start)
    {
        long long i = static_cast<long long>(std::min(start, levels_.size() - 1));
        while (i >= 0) {
            bool moved = false;
            for (std::size_t p = 0; p < levels_[i].orbit.size() && !moved; ++p) {
                while (levels_[i].done[p] < levels_[i].gens.size()) {
                    auto& l = levels_[i];
                    const perm s = l.gens[l.done[p]++];
                    letter b = l.orbit[p];
                    perm sch = *l.trans[b] * s * l.trans[s(b)]->inverse();
                    auto [res, lvl] = strip(sch, static_cast<std::size_t>(i) + 1);
                    if (!res.is_identity()) {
                        insert(static_cast<std::size_t>(i) + 1, lvl, res);
                        i = static_cast<long long>(lvl);
                        moved = true;
                        break;
                    }
                }
            }
            if (!moved) --i;
        }
    }

    void check_cap() const
    {
        if (order() > caps::get().group_order) throw cap_exceeded("group order exceeds cap");
    }

    void walk(std::size_t i, const perm& acc, const std::function<void(const perm&)>& fn) const
    {
        if (i == 0) {
            fn(acc);
            return;
        }
        auto& l = levels_[i - 1];
        for (auto b : l.orbit) walk(i - 1, acc * *l.trans[b], fn);
    }

    std::size_t n_;
    std::vector<level> levels_;
};

struct block_system {
    std::vector<std::vector<letter>> blocks;
    std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
    bool operator==(const block_system&) const = default;
    auto operator<=>(const block_system&) const = default;
};

class group {
public:
    group() : group(1, {}) {}
    group(std::size_t n, std::vector<perm> gens) : n_(n), gens_(std::move(gens)), chain_(std::make_shared<stab_chain>(n))
    {
        for (auto& g : gens_) {
            if (g.degree() != n_) throw bad_input("generator degree mismatch");
            chain_->add(g);
        }
    }

    // Group from an element list; keeps only generators that enlarge the group.
    static group generated_by(std::size_t n, const std::vector<perm>& elems)
    {
        stab_chain c(n);
        std::vector<perm> kept;
        for (auto& e : elems)
            if (c.add(e)) kept.push_back(e);
        return group(n, std::move(kept));
    }

    std::size_t degree() const noexcept { return n_; }
    const std::vector<perm>& generators() const noexcept { return gens_; }
    std::uint64_t order() const { return chain_->order(); }
    bool contains(const perm& g) const { return chain_->contains(g); }

    std::vector<perm> elements() const
    {
        if (order() > caps::get().enumerate) throw cap_exceeded("group too large to enumerate");
        std::vector<perm> out;
        out.reserve(order());
        chain_->for_each_element([&](const perm& p) { out.push_back(p); });
        return out;
    }

    void for_each_element(const std::function<void(const perm&)>& fn) const
    {
        if (order() > caps::get().enumerate) throw cap_exceeded("group too large to enumerate");
        chain_->for_each_element(fn);
    }

    std::vector<letter> orbit(letter i) const
    {
        std::vector<letter> orb{i};
        std::vector<bool> seen(n_);
        seen[i] = true;
        for (std::size_t h = 0; h < orb.size(); ++h)
            for (auto& g : gens_) {
                letter c = g(orb[h]);
                if (!seen[c]) {
                    seen[c] = true;
                    orb.push_back(c);
                }
            }
        std::sort(orb.begin(), orb.end());
        return orb;
    }

    // Orbits meeting seed, each sorted, listed by least element.
    orbit_list orbits(const std::vector<letter>& seed) const
    {
        std::vector<bool> done(n_);
        orbit_list out;
        std::vector<letter> s(seed);
        std::sort(s.begin(), s.end());
        for (auto i : s) {
            if (i >= n_) throw bad_input("letter out of range");
            if (done[i]) continue;
            auto o = orbit(i);
            for (auto x : o) done[x] = true;
            out.push_back(std::move(o));
        }
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.front() < b.front(); });
        return out;
    }

    orbit_list orbits() const
    {
        std::vector<letter> all(n_);
        std::iota(all.begin(), all.end(), letter{0});
        return orbits(all);
    }

    bool is_transitive() const { return orbit(0).size() == n_; }

    // Word-free transversal: element mapping i to each orbit point, by BFS over generators in order.
    std::vector<std::optional<perm>> transversal(letter i) const
    {
        std::vector<std::optional<perm>> t(n_);
        t[i] = perm::identity(n_);
        std::vector<letter> q{i};
        for (std::size_t h = 0; h < q.size(); ++h)
            for (auto& g : gens_) {
                letter c = g(q[h]);
                if (!t[c]) {
                    t[c] = *t[q[h]] * g;
                    q.push_back(c);
                }
            }
        return t;
    }

    group stabilizer(letter i) const
    {
        auto t = transversal(i);
        std::vector<perm> sch;
        for (letter b = 0; b < n_; ++b) {
            if (!t[b]) continue;
            for (auto& g : gens_) {
                perm s = *t[b] * g * t[g(b)]->inverse();
                if (!s.is_identity()) sch.push_back(std::move(s));
            }
        }
        return generated_by(n_, sch);
    }

    // Setwise stabilizer of a block of a block system (acts on blocks).
    group block_stabilizer(const block_system& bs, std::size_t which) const
    {
        auto act = block_action(bs);
        std::vector<std::optional<perm>> lift(bs.blocks.size());
        lift[which] = perm::identity(n_);
        std::vector<letter> queue{static_cast<letter>(which)};
        for (std::size_t h = 0; h < queue.size(); ++h)
            for (std::size_t k = 0; k < gens_.size(); ++k) {
                letter c = act[k](queue[h]);
                if (!lift[c]) {
                    lift[c] = *lift[queue[h]] * gens_[k];
                    queue.push_back(c);
                }
            }
        std::vector<perm> sch;
        for (auto b : queue)
            for (std::size_t k = 0; k < gens_.size(); ++k) {
                letter c = act[k](b);
                perm s = *lift[b] * gens_[k] * lift[c]->inverse();
                if (!s.is_identity()) sch.push_back(std::move(s));
            }
        return generated_by(n_, sch);
    }

    std::vector<perm> block_action(const block_system& bs) const
    {
        std::vector<letter> which(n_);
        for (letter b = 0; b < bs.blocks.size(); ++b)
            for (auto x : bs.blocks[b]) which[x] = b;
        std::vector<perm> out;
        for (auto& g : gens_) {
            std::vector<letter> img(bs.blocks.size());
            for (letter b = 0; b < bs.blocks.size(); ++b) img[b] = which[g(bs.blocks[b].front())];
            out.emplace_back(std::move(img));
        }
        return out;
    }

    // Finest block system with seed inside one block.
    block_system minimal_block_system(const std::vector<letter>& seed) const
    {
        std::vector<letter> parent(n_);
        std::iota(parent.begin(), parent.end(), letter{0});
        std::function<letter(letter)> find = [&](letter x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto unite = [&](letter a, letter b) {
            a = find(a);
            b = find(b);
            if (a == b) return false;
            if (a > b) std::swap(a, b);
            parent[b] = a;
            return true;
        };
        for (std::size_t k = 1; k < seed.size(); ++k) unite(seed[0], seed[k]);
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& g : gens_)
                for (letter i = 0; i < n_; ++i)
                    if (unite(g(find(i)), g(i))) changed = true;
        }
        std::map<letter, std::vector<letter>> cls;
        for (letter i = 0; i < n_; ++i) cls[find(i)].push_back(i);
        block_system bs;
        for (auto& [r, v] : cls) bs.blocks.push_back(v);
        std::sort(bs.blocks.begin(), bs.blocks.end());
        return bs;
    }

    // All nontrivial block systems; sorted by block size then blocks.
    std::vector<block_system> block_systems() const
    {
        if (!is_transitive()) throw invalid("block systems require a transitive group");
        std::set<block_system> found;
        std::vector<block_system> queue;
        auto consider = [&](const block_system& bs) {
            if (bs.block_size() <= 1 || bs.block_size() >= n_) return;
            if (found.insert(bs).second) queue.push_back(bs);
        };
        for (letter j = 1; j < n_; ++j) consider(minimal_block_system({0, j}));
        for (std::size_t h = 0; h < queue.size(); ++h) {
            auto b0 = queue[h].blocks.front();
            std::vector<bool> in(n_);
            for (auto x : b0) in[x] = true;
            for (letter j = 0; j < n_; ++j) {
                if (in[j]) continue;
                auto seed = b0;
                seed.push_back(j);
                consider(minimal_block_system(seed));
            }
        }
        std::vector<block_system> out(found.begin(), found.end());
        std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.block_size() < b.block_size(); });
        return out;
    }

    bool is_primitive() const { return block_systems().empty(); }

    bool is_subgroup_of(const group& g) const
    {
        for (auto& x : gens_)
            if (!g.contains(x)) return false;
        return true;
    }

    // Action of the generators on right cosets Hx, coset H labelled 0, others by BFS.
    std::vector<perm> coset_action(const group& h) const
    {
        if (!h.is_subgroup_of(*this)) throw invalid("subgroup not contained in group");
        auto idx = order() / h.order();
        if (idx > caps::get().enumerate) throw cap_exceeded("coset index too large");
        std::vector<perm> reps{perm::identity(n_)};
        std::vector<perm> reps_inv{perm::identity(n_)};
        std::vector<std::vector<letter>> img(gens_.size());
        auto locate = [&](const perm& y) -> std::optional<letter> {
            for (letter j = 0; j < reps.size(); ++j)
                if (h.contains(y * reps_inv[j])) return j;
            return std::nullopt;
        };
        for (std::size_t c = 0; c < reps.size(); ++c) {
            for (std::size_t k = 0; k < gens_.size(); ++k) {
                perm y = reps[c] * gens_[k];
                auto j = locate(y);
                if (!j) {
                    j = static_cast<letter>(reps.size());
                    reps.push_back(y);
                    reps_inv.push_back(y.inverse());
                }
                img[k].push_back(*j);
            }
        }
        std::vector<perm> out;
        for (auto& v : img) out.emplace_back(std::move(v));
        return out;
    }

    std::vector<perm> conjugacy_class(const perm& x) const
    {
        if (!contains(x)) throw invalid("element not in group");
        std::vector<perm> cls{x};
        std::unordered_set<perm, perm_hash> seen{x};
        for (std::size_t h = 0; h < cls.size(); ++h)
            for (auto& g : gens_) {
                perm c = cls[h].conj(g);
                if (seen.insert(c).second) cls.push_back(c);
            }
        std::sort(cls.begin(), cls.end());
        return cls;
    }

    perm class_rep(const perm& x) const { return conjugacy_class(x).front(); }

    bool are_conjugate(const perm& x, const perm& y) const
    {
        if (!contains(y)) throw invalid("element not in group");
        auto c = conjugacy_class(x);
        return std::binary_search(c.begin(), c.end(), y);
    }

    // Conjugacy classes sorted by representative.
    std::vector<std::vector<perm>> conjugacy_classes() const
    {
        std::unordered_set<perm, perm_hash> done;
        std::vector<std::vector<perm>> out;
        for (auto& e : elements()) {
            if (done.count(e)) continue;
            auto c = conjugacy_class(e);
            for (auto& y : c) done.insert(y);
            out.push_back(std::move(c));
        }
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.front() < b.front(); });
        return out;
    }

private:
    std::size_t n_;
    std::vector<perm> gens_;
    std::shared_ptr<stab_chain> chain_;
};

inline group symmetric_group(std::size_t n)
{
    if (n == 1) return group(1, {});
    std::vector<letter> c(n);
    for (letter i = 0; i < n; ++i) c[i] = (i + 1) % n;
    std::vector<perm> g{perm::cycle(n, {1, 2})};
    if (n > 2) g.emplace_back(std::move(c));
    return group(n, g);
}

inline group alternating_group(std::size_t n)
{
    std::vector<perm> g;
    for (letter k = 3; k <= n; ++k) g.push_back(perm::cycle(n, {1, 2, k}));
    return group(n, g);
}

inline group cyclic_group(std::size_t n)
{
    std::vector<letter> c(n);
    for (letter i = 0; i < n; ++i) c[i] = (i + 1) % n;
    return group(n, {perm(c)});
}

// Dihedral group of order 2n on n letters.
inline group dihedral_group(std::size_t n)
{
    std::vector<letter> c(n), r(n);
    for (letter i = 0; i < n; ++i) {
        c[i] = (i + 1) % n;
        r[i] = static_cast<letter>((n - i) % n);
    }
    return group(n, {perm(c), perm(r)});
}

// N_{S_n}(G) by sweeping S_n.
inline group normalizer_in_symmetric(const group& g)
{
    auto n = g.degree();
    if (static_cast<int>(n) > caps::get().normalizer_degree)
        throw cap_exceeded("normalizer sweep beyond degree cap");
    stab_chain acc(n);
    std::vector<perm> kept;
    for (auto& x : g.generators())
        if (acc.add(x)) kept.push_back(x);
    std::vector<letter> img(n);
    std::iota(img.begin(), img.end(), letter{0});
    do {
        perm x(img);
        if (acc.contains(x)) continue;
        bool ok = true;
        for (auto& s : g.generators())
            if (!g.contains(s.conj(x))) {
                ok = false;
                break;
            }
        if (ok && acc.add(x)) kept.push_back(x);
    } while (std::next_permutation(img.begin(), img.end()));
    return group(n, kept);
}

// Elements of n normalizing g that permute the given class multiset.
inline group class_stabilizer(const group& n, const group& g, const std::vector<perm>& class_reps)
{
    auto key = [&](const perm& x) { return g.class_rep(x); };
    std::vector<perm> base;
    for (auto& c : class_reps) base.push_back(key(c));
    std::sort(base.begin(), base.end());
    std::vector<perm> keep;
    stab_chain acc(n.degree());
    n.for_each_element([&](const perm& x) {
        if (acc.contains(x)) return;
        std::vector<perm> img;
        for (auto& c : class_reps) img.push_back(key(c.conj(x)));
        std::sort(img.begin(), img.end());
        if (img == base && acc.add(x)) keep.push_back(x);
    });
    return group(n.degree(), keep);
}

}  // namespace bc
