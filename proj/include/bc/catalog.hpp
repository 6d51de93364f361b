#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cover.hpp"
#include "fiber.hpp"
#include "group.hpp"
#include "nielsen.hpp"
#include "perm.hpp"

namespace bc {

enum class entry_kind { cover, pair, nielsen, metadata };

struct catalog_entry {
    std::string key;
    std::string description;
    entry_kind kind = entry_kind::metadata;
    std::optional<cover> as_cover;
    std::optional<paired_cover> as_pair;
    std::optional<nielsen_spec> as_nielsen;
    nlohmann::json meta;
    nlohmann::json expected;
};

namespace detail {

inline perm p7(const char* s) { return perm::parse(s, 7); }

inline perm sigma_inf7() { return p7("(1 2 3 4 5 6 7)").inverse(); }

inline cover deg7(const char* a, const char* b)
{
    return cover{7, {"z1", "z2", "infinity"}, {p7(a), p7(b), sigma_inf7()}};
}

// Letters of Z/n are 1..n; reflection x -> b - x and rotation x -> x + 1.
inline perm reflection(std::size_t n, long long b)
{
    std::vector<letter> img(n);
    auto N = static_cast<long long>(n);
    for (long long x = 0; x < N; ++x) img[static_cast<std::size_t>(x)] = static_cast<letter>(((b - x) % N + N) % N);
    return perm(img);
}

inline perm rotation(std::size_t n, long long k = 1)
{
    std::vector<letter> img(n);
    auto N = static_cast<long long>(n);
    for (long long x = 0; x < N; ++x) img[static_cast<std::size_t>(x)] = static_cast<letter>(((x + k) % N + N) % N);
    return perm(img);
}

inline std::size_t pair_index(std::size_t m, std::size_t i, std::size_t j)
{
    if (i > j) std::swap(i, j);
    // Lexicographic order of pairs i < j.
    return i * m - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace detail

// Action on unordered pairs {i<j}, labelled lexicographically.
inline perm pairs_action(const perm& p)
{
    auto m = p.degree();
    std::vector<letter> img(m * (m - 1) / 2);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            img[detail::pair_index(m, i, j)] = static_cast<letter>(detail::pair_index(m, p(static_cast<letter>(i)), p(static_cast<letter>(j))));
    return perm(img);
}

inline paired_cover build_sm_pair(std::size_t m)
{
    if (m < 4) throw bad_input("m must be at least 4");
    if (m * (m - 1) / 2 * m > caps::get().enumerate) throw cap_exceeded("pair degree exceeds cap");
    std::vector<letter> c2(m), c3(m);
    for (letter i = 0; i < m; ++i) c3[i] = (i + 1) % static_cast<letter>(m);
    // (1 3 4 ... m)
    std::iota(c2.begin(), c2.end(), letter{0});
    c2[0] = 2;
    for (letter i = 2; i + 1 < m; ++i) c2[i] = i + 1;
    c2[m - 1] = 0;
    std::vector<perm> s{perm::cycle(m, {1, 2}), perm(c2), perm(c3).inverse()};
    std::vector<std::string> labels{"z1", "z2", "infinity"};
    cover sigma{m, labels, s};
    cover tau{m * (m - 1) / 2, labels, {}};
    for (auto& x : s) tau.cycles.push_back(pairs_action(x));
    return paired_cover{labels, sigma, tau};
}

// class_spec: "C2^4" (four involutions) or "C2^2.n" (two involutions and an n-cycle).
inline cover build_dihedral(std::size_t n, const std::string& class_spec)
{
    using namespace detail;
    if (n < 3) throw bad_input("dihedral degree must be at least 3");
    if (class_spec == "C2^4")
        return cover{n, default_labels(4), {reflection(n, 0), reflection(n, 1), reflection(n, 2), reflection(n, 1)}};
    if (class_spec == "C2^2.n")
        return cover{n, {"z1", "z2", "infinity"}, {reflection(n, 0), reflection(n, 1), rotation(n).inverse()}};
    throw bad_input("unknown dihedral class spec: " + class_spec);
}

// Chebychev-type cover of degree d >= 2 on the given three labels: involution, involution, d-cycle.
inline cover chebychev_cover(std::size_t d, const std::vector<std::string>& labels)
{
    using namespace detail;
    if (labels.size() != 3) throw bad_input("chebychev cover needs three labels");
    if (d < 2) throw bad_input("degree must be at least 2");
    cover c{d, labels, {reflection(d, 0), reflection(d, 1), rotation(d).inverse()}};
    return drop_identities(c);
}

// D4 on Z/4 against its action on cosets of <x -> 1 - x>; classes (s0, s2, s1, s3) or (s0, s1, rho^-1).
inline paired_cover build_d4_pair(bool polynomial)
{
    using namespace detail;
    std::vector<perm> s;
    std::vector<std::string> labels;
    if (polynomial) {
        s = {reflection(4, 0), reflection(4, 1), rotation(4).inverse()};
        labels = {"z1", "z2", "infinity"};
    } else {
        s = {reflection(4, 0), reflection(4, 2), reflection(4, 1), reflection(4, 3)};
        labels = default_labels(4);
    }
    group G(4, s);
    group H(4, {reflection(4, 1)});
    auto t = G.coset_action(H);
    return paired_cover{labels, cover{4, labels, s}, cover{t.front().degree(), labels, t}};
}

inline nielsen_spec build_hilbert_siegel_m5()
{
    auto S5 = symmetric_group(5);
    nielsen_spec spec;
    spec.G = S5;
    spec.classes = {perm::cycle(5, {1, 2}), perm::cycle(5, {1, 2}), perm::parse("(1 2)(3 4)", 5),
                    perm::cycle(5, {1, 2, 3, 4, 5})};
    spec.mode = equivalence::absolute;
    std::vector<perm> im;
    for (auto& g : S5.generators()) im.push_back(pairs_action(g));
    spec.second = im;
    return spec;
}

inline nielsen_spec deg7_nielsen(std::vector<perm> classes, bool ordered)
{
    using namespace detail;
    nielsen_spec spec;
    spec.G = group(7, {p7("(1 3)(4 5)"), p7("(1 4 6 7)(2 3)")});
    spec.classes = std::move(classes);
    spec.mode = equivalence::absolute;
    spec.ordered = ordered;
    spec.second = std::vector<perm>{p7("(1 2)(3 5)"), p7("(1 3 6 7)(4 5)")};
    return spec;
}

// Six involutions (a, b, c, d, e, f) with d e f = 7-cycle, extending the first four-branch-point tuple.
inline std::vector<perm> deg7_six_tuple()
{
    using namespace detail;
    group G(7, {p7("(1 3)(4 5)"), p7("(1 4 6 7)(2 3)")});
    std::vector<perm> inv;
    for (auto& g : G.elements())
        if (g.order() == 2) inv.push_back(g);
    std::sort(inv.begin(), inv.end());
    auto s = sigma_inf7();
    for (auto& d : inv)
        for (auto& e : inv) {
            auto f = (d * e).inverse() * s;
            if (f.order() == 2)
                return {p7("(1 3)(4 5)"), p7("(1 6)(2 3)"), p7("(4 6)(1 7)"), d, e, f};
        }
    throw invalid("no involution factorization of the 7-cycle");
}

inline std::vector<std::string> catalog_keys()
{
    return {"deg7-pair-1",  "deg7-pair-2",    "deg7-4tuple-1", "deg7-4tuple-2", "deg7-6tuple-1", "C2^3.7", "C2^6",
            "Cinf.2.4",     "Cinf.2.3",       "sm-pair-5",     "sm-pair-7",     "sm-pair-9",
            "dihedral-5-C2^4", "dihedral-5-C2^2.n", "d4-pair",  "t4-pair",       "hilbert-siegel-m5",
            "degrees-davenport"};
}

inline catalog_entry catalog_get(const std::string& key)
{
    using namespace detail;
    catalog_entry e;
    e.key = key;
    auto set_pair = [&](paired_cover pc) {
        e.kind = entry_kind::pair;
        e.as_pair = std::move(pc);
    };
    auto set_cover = [&](cover c) {
        e.kind = entry_kind::cover;
        e.as_cover = std::move(c);
    };
    auto set_ni = [&](nielsen_spec s) {
        e.kind = entry_kind::nielsen;
        e.as_nielsen = std::move(s);
    };
    auto inv = p7("(1 3)(4 5)");
    if (key == "deg7-pair-1") {
        e.description = "degree 7 points/lines pair, classes 2.4.7";
        set_pair(make_pair(deg7("(1 3)(4 5)", "(1 4 6 7)(2 3)"), deg7("(1 2)(3 5)", "(1 3 6 7)(4 5)")));
        e.expected = {{"components", {21, 28}}, {"genus", {0, 1}}};
    } else if (key == "deg7-pair-2") {
        e.description = "degree 7 points/lines pair, classes 3.2.7";
        set_pair(make_pair(deg7("(1 2 3)(4 5 7)", "(1 4)(6 7)"), deg7("(1 2 7)(3 5 6)", "(3 7)(4 5)")));
        e.expected = {{"components", {21, 28}}, {"genus", {0, 0}}};
    } else if (key == "deg7-4tuple-1" || key == "deg7-4tuple-2") {
        bool one = key.back() == '1';
        std::vector<perm> s = one ? std::vector<perm>{p7("(1 3)(4 5)"), p7("(1 6)(2 3)"), p7("(4 6)(1 7)"), sigma_inf7()}
                                  : std::vector<perm>{p7("(1 3)(4 7)"), p7("(2 3)(5 7)"), p7("(1 4)(6 7)"), sigma_inf7()};
        e.description = one ? "four-branch-point lift of pair 1 (coalesce entries 2,3)"
                            : "four-branch-point lift of pair 2 (coalesce entries 1,2)";
        std::vector<std::string> labels{"z1", "z2", "z3", "infinity"};
        cover sc{7, labels, s};
        if (one) {
            auto spec = deg7_nielsen({}, true);
            homomorphism phi(spec.G, *spec.second);
            cover tc{7, labels, {}};
            for (auto& x : s) tc.cycles.push_back(phi(x));
            set_pair(make_pair(sc, tc));
        } else {
            set_cover(sc);
        }
        e.meta = {{"coalesce_at", one ? 2 : 1}};
    } else if (key == "deg7-6tuple-1") {
        e.description = "six involutions; coalescing 5,6 then 4,5 gives deg7-4tuple-1";
        auto s = deg7_six_tuple();
        auto spec = deg7_nielsen({}, true);
        homomorphism phi(spec.G, *spec.second);
        auto labels = default_labels(6);
        cover tc{7, labels, {}};
        for (auto& x : s) tc.cycles.push_back(phi(x));
        set_pair(make_pair(cover{7, labels, s}, tc));
    } else if (key == "C2^3.7") {
        e.description = "three involutions and a 7-cycle, 7-cycle last";
        set_ni(deg7_nielsen({inv, inv, inv, sigma_inf7()}, true));
        e.expected = {{"count", 7}};
    } else if (key == "C2^6") {
        e.description = "six involutions";
        set_ni(deg7_nielsen({inv, inv, inv, inv, inv, inv}, true));
    } else if (key == "Cinf.2.4") {
        e.description = "classes 2.4.7, any order";
        set_ni(deg7_nielsen({inv, p7("(1 4 6 7)(2 3)"), sigma_inf7()}, false));
        e.expected = {{"count", 6}};
    } else if (key == "Cinf.2.3") {
        e.description = "classes 3.2.7, any order";
        set_ni(deg7_nielsen({p7("(1 2 3)(4 5 7)"), inv, sigma_inf7()}, false));
        e.expected = {{"count", 6}};
    } else if (key.rfind("sm-pair-", 0) == 0) {
        std::size_t m = std::stoul(key.substr(8));
        e.description = "S_m standard against unordered pairs, m = " + std::to_string(m);
        set_pair(build_sm_pair(m));
    } else if (key == "dihedral-5-C2^4") {
        e.description = "D_5 with four involutions";
        set_cover(build_dihedral(5, "C2^4"));
        e.expected = {{"galois_genus", 1}, {"ochar", "0"}};
    } else if (key == "dihedral-5-C2^2.n") {
        e.description = "D_5 Chebychev class";
        set_cover(build_dihedral(5, "C2^2.n"));
        e.expected = {{"galois_genus", 0}};
    } else if (key == "d4-pair") {
        e.description = "D_4 on vertices against edges, classes 1^2 2^2";
        set_pair(build_d4_pair(false));
        e.expected = {{"components", 2}};
    } else if (key == "t4-pair") {
        e.description = "D_4 on vertices against edges, classes 2^2.4";
        set_pair(build_d4_pair(true));
        e.expected = {{"components", 2}};
    } else if (key == "hilbert-siegel-m5") {
        e.description = "S_5 classes 2, 2, 2.2, 5 with the pairs action";
        set_ni(build_hilbert_siegel_m5());
    } else if (key == "degrees-davenport") {
        e.description = "degrees of primitive Davenport-type pairs";
        e.kind = entry_kind::metadata;
        e.meta = {{"degrees", {7, 11, 13, 15, 21, 31}}, {"difference_set_13", {1, 2, 4, 10}}};
    } else {
        throw bad_input("unknown catalog key: " + key);
    }
    return e;
}

inline nlohmann::json to_json(const catalog_entry& e)
{
    nlohmann::json j;
    j["key"] = e.key;
    j["description"] = e.description;
    switch (e.kind) {
    case entry_kind::cover: j["cover"] = to_json(*e.as_cover); break;
    case entry_kind::pair: j["pair"] = to_json(*e.as_pair); break;
    case entry_kind::nielsen: j["nielsen"] = to_json(*e.as_nielsen); break;
    case entry_kind::metadata: break;
    }
    if (!e.meta.is_null()) j["meta"] = e.meta;
    if (!e.expected.is_null()) j["expected"] = e.expected;
    return j;
}

}  // namespace bc
