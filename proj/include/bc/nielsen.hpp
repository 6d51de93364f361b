#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "cover.hpp"
#include "fiber.hpp"
#include "group.hpp"
#include "perm.hpp"

namespace bc {

using tuple_t = std::vector<perm>;

enum class equivalence { raw, inner, absolute };

inline std::string to_string(equivalence e)
{
    switch (e) {
    case equivalence::raw: return "raw";
    case equivalence::inner: return "inner";
    case equivalence::absolute: return "absolute";
    }
    return "?";
}

inline equivalence parse_equivalence(const std::string& s)
{
    if (s == "raw") return equivalence::raw;
    if (s == "inner") return equivalence::inner;
    if (s == "absolute") return equivalence::absolute;
    throw bad_input("unknown equivalence mode: " + s);
}

struct nielsen_spec {
    group G;
    std::vector<perm> classes;  // one representative per entry, repetitions allowed
    equivalence mode = equivalence::absolute;
    bool ordered = false;  // entry i must lie in class i; otherwise any ordering of the multiset
    std::vector<perm> outer;  // extra normalizing elements used beyond the normalizer cap
    std::optional<std::vector<perm>> second;  // images of G's generators under a second action

    std::size_t r() const { return classes.size(); }
};

// Map G -> second action defined by generator images.
class homomorphism {
public:
    homomorphism(const group& g, const std::vector<perm>& images)
    {
        if (images.size() != g.generators().size()) throw bad_input("image count differs from generator count");
        auto j = joint_group(g.generators(), images);
        if (j.order() != g.order()) throw invalid("second action is not a homomorphic image of the group");
        auto m = g.degree();
        auto n = images.empty() ? 1 : images.front().degree();
        j.for_each_element([&](const perm& e) {
            std::vector<letter> a(m), b(n);
            for (letter x = 0; x < m; ++x) a[x] = e(x);
            for (letter y = 0; y < n; ++y) b[y] = e(static_cast<letter>(m + y)) - static_cast<letter>(m);
            map_.emplace(perm(a), perm(b));
        });
    }

    perm operator()(const perm& x) const
    {
        auto it = map_.find(x);
        if (it == map_.end()) throw invalid("element not in group");
        return it->second;
    }

private:
    std::unordered_map<perm, perm, perm_hash> map_;
};

struct nielsen_context {
    std::vector<std::vector<perm>> class_elems;  // per distinct class, sorted
    std::vector<perm> class_keys;
    std::vector<std::size_t> entry_class;  // index into class_elems for each spec entry
    std::vector<perm> equiv;  // equivalence group elements
    std::string mode_used;
};

inline std::size_t class_index(const nielsen_context& ctx, const perm& x)
{
    for (std::size_t k = 0; k < ctx.class_elems.size(); ++k)
        if (std::binary_search(ctx.class_elems[k].begin(), ctx.class_elems[k].end(), x)) return k;
    return static_cast<std::size_t>(-1);
}

inline nielsen_context make_context(const nielsen_spec& spec)
{
    nielsen_context ctx;
    for (auto& c : spec.classes) {
        auto key = spec.G.class_rep(c);
        auto it = std::find(ctx.class_keys.begin(), ctx.class_keys.end(), key);
        if (it == ctx.class_keys.end()) {
            ctx.class_keys.push_back(key);
            ctx.class_elems.push_back(spec.G.conjugacy_class(c));
            ctx.entry_class.push_back(ctx.class_keys.size() - 1);
        } else {
            ctx.entry_class.push_back(static_cast<std::size_t>(it - ctx.class_keys.begin()));
        }
    }
    switch (spec.mode) {
    case equivalence::raw:
        ctx.equiv = {perm::identity(spec.G.degree())};
        ctx.mode_used = "raw";
        break;
    case equivalence::inner:
        ctx.equiv = spec.G.elements();
        ctx.mode_used = "inner";
        break;
    case equivalence::absolute:
        if (static_cast<int>(spec.G.degree()) <= caps::get().normalizer_degree) {
            auto N = normalizer_in_symmetric(spec.G);
            ctx.equiv = class_stabilizer(N, spec.G, spec.classes).elements();
            ctx.mode_used = "absolute";
        } else {
            auto gens = spec.G.generators();
            for (auto& o : spec.outer) gens.push_back(o);
            ctx.equiv = group::generated_by(spec.G.degree(), gens).elements();
            ctx.mode_used = spec.outer.empty() ? "inner (normalizer cap)" : "inner+catalog-outer (normalizer cap)";
        }
        break;
    }
    return ctx;
}

inline tuple_t canonical(const nielsen_context& ctx, const tuple_t& t)
{
    tuple_t best = t;
    for (auto& h : ctx.equiv) {
        tuple_t c;
        c.reserve(t.size());
        bool less = false, decided = false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            c.push_back(t[i].conj(h));
            if (!decided && c[i] != best[i]) {
                decided = true;
                less = c[i] < best[i];
                if (!less) break;
            }
        }
        if (less) best = std::move(c);
    }
    return best;
}

inline bool generates(const group& G, const tuple_t& t)
{
    group h(G.degree(), t);
    if (G.is_transitive() && !h.is_transitive()) return false;
    return h.order() == G.order();
}

inline bool in_nielsen_class(const nielsen_spec& spec, const nielsen_context& ctx, const tuple_t& t)
{
    if (t.size() != spec.r()) return false;
    perm p = perm::identity(spec.G.degree());
    std::vector<std::size_t> got, want = ctx.entry_class;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (!spec.G.contains(t[i])) return false;
        p = p * t[i];
        got.push_back(class_index(ctx, t[i]));
    }
    if (!p.is_identity()) return false;
    if (!spec.ordered) {
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
    }
    if (got != want) return false;
    return generates(spec.G, t);
}

struct nielsen_result {
    std::vector<tuple_t> elements;  // canonical, sorted
    std::uint64_t raw_count = 0;
    std::string mode_used;
};

inline nielsen_result enumerate(const nielsen_spec& spec)
{
    auto ctx = make_context(spec);
    auto r = spec.r();
    if (r == 0) throw bad_input("empty class list");
    // Distinct orderings of the class multiset.
    std::vector<std::vector<std::size_t>> orderings;
    if (spec.ordered) {
        orderings.push_back(ctx.entry_class);
    } else {
        auto o = ctx.entry_class;
        std::sort(o.begin(), o.end());
        do orderings.push_back(o);
        while (std::next_permutation(o.begin(), o.end()));
    }
    std::uint64_t space = 0;
    for (auto& o : orderings) {
        std::uint64_t s = 1;
        for (std::size_t i = 0; i + 1 < r; ++i) s *= ctx.class_elems[o[i]].size();
        space += s;
    }
    if (space > caps::get().nielsen_search) throw cap_exceeded("Nielsen search space exceeds cap");

    nielsen_result res;
    res.mode_used = ctx.mode_used;
    std::set<tuple_t> found;
    auto n = spec.G.degree();
    for (auto& o : orderings) {
        tuple_t t(r);
        std::function<void(std::size_t, const perm&)> rec = [&](std::size_t i, const perm& prefix) {
            if (i + 1 == r) {
                perm last = prefix.inverse();
                auto& cl = ctx.class_elems[o[i]];
                if (!std::binary_search(cl.begin(), cl.end(), last)) return;
                t[i] = last;
                if (!generates(spec.G, t)) return;
                ++res.raw_count;
                found.insert(canonical(ctx, t));
                return;
            }
            for (auto& x : ctx.class_elems[o[i]]) {
                t[i] = x;
                rec(i + 1, prefix * x);
            }
        };
        rec(0, perm::identity(n));
    }
    res.elements.assign(found.begin(), found.end());
    return res;
}

// Braid words: tokens q<i>, q<i>^-1, sh, sh^-1 separated by spaces; applied left to right.
struct braid_letter {
    std::size_t i = 0;  // 0 for sh
    bool inverse = false;
};

using braid_word = std::vector<braid_letter>;

inline braid_word parse_braid(const std::string& text)
{
    braid_word w;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        braid_letter b;
        auto caret = tok.find("^-1");
        if (caret != std::string::npos) {
            b.inverse = true;
            tok = tok.substr(0, caret);
        }
        if (tok == "sh") {
            b.i = 0;
        } else if (tok.size() > 1 && tok[0] == 'q') {
            try {
                b.i = std::stoul(tok.substr(1));
            } catch (...) {
                throw bad_input("bad braid token: " + tok);
            }
            if (b.i == 0) throw bad_input("braid index starts at 1");
        } else {
            throw bad_input("bad braid token: " + tok);
        }
        w.push_back(b);
    }
    return w;
}

inline tuple_t q_move(tuple_t t, std::size_t i, bool inverse = false)
{
    if (i == 0 || i >= t.size()) throw bad_input("braid index out of range");
    auto& a = t[i - 1];
    auto& b = t[i];
    if (!inverse) {
        perm na = a * b * a.inverse();
        b = a;
        a = na;
    } else {
        perm nb = b.inverse() * a * b;
        a = b;
        b = nb;
    }
    return t;
}

inline tuple_t shift(tuple_t t, bool inverse = false)
{
    if (t.empty()) return t;
    if (!inverse)
        std::rotate(t.begin(), t.begin() + 1, t.end());
    else
        std::rotate(t.rbegin(), t.rbegin() + 1, t.rend());
    return t;
}

inline tuple_t braid_apply(tuple_t t, const braid_word& w)
{
    for (auto& b : w) t = b.i == 0 ? shift(std::move(t), b.inverse) : q_move(std::move(t), b.i, b.inverse);
    return t;
}

struct braid_orbit_result {
    std::vector<tuple_t> elements;
    std::vector<std::vector<std::size_t>> orbits;  // indices into elements
    std::string mode_used;
};

inline braid_orbit_result braid_orbits(const nielsen_spec& spec)
{
    auto ctx = make_context(spec);
    auto en = enumerate(spec);
    braid_orbit_result res;
    res.elements = en.elements;
    res.mode_used = en.mode_used;
    std::map<tuple_t, std::size_t> index;
    for (std::size_t k = 0; k < res.elements.size(); ++k) index[res.elements[k]] = k;
    std::vector<bool> seen(res.elements.size());
    auto r = spec.r();
    for (std::size_t s = 0; s < res.elements.size(); ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> orb{s};
        seen[s] = true;
        for (std::size_t h = 0; h < orb.size(); ++h) {
            auto& t = res.elements[orb[h]];
            std::vector<tuple_t> nxt;
            for (std::size_t i = 1; i < r; ++i) nxt.push_back(q_move(t, i));
            if (!spec.ordered) nxt.push_back(shift(t));
            for (auto& u : nxt) {
                auto it = index.find(canonical(ctx, u));
                if (it == index.end()) continue;  // leaves an ordered class
                if (!seen[it->second]) {
                    seen[it->second] = true;
                    orb.push_back(it->second);
                }
            }
        }
        std::sort(orb.begin(), orb.end());
        res.orbits.push_back(std::move(orb));
    }
    return res;
}

struct h3_report {
    bool q1_squared_trivial = true;
    bool q2_squared_trivial = true;
    std::size_t distinct_classes = 0;
    std::size_t orderings = 0;  // size of the S3 image on class orderings
    std::vector<std::size_t> orbit_lengths;
};

inline h3_report h3_structure(const nielsen_spec& spec)
{
    if (spec.r() != 3) throw invalid("H3 structure requires r = 3");
    auto ctx = make_context(spec);
    auto orb = braid_orbits(spec);
    h3_report rep;
    for (auto& t : orb.elements) {
        if (canonical(ctx, q_move(q_move(t, 1), 1)) != t) rep.q1_squared_trivial = false;
        if (canonical(ctx, q_move(q_move(t, 2), 2)) != t) rep.q2_squared_trivial = false;
    }
    std::set<std::size_t> d(ctx.entry_class.begin(), ctx.entry_class.end());
    rep.distinct_classes = d.size();
    std::set<std::vector<std::size_t>> ords;
    auto o = ctx.entry_class;
    std::sort(o.begin(), o.end());
    do ords.insert(o);
    while (std::next_permutation(o.begin(), o.end()));
    rep.orderings = ords.size();
    for (auto& v : orb.orbits) rep.orbit_lengths.push_back(v.size());
    return rep;
}

struct coalesce_result {
    tuple_t tuple;
    bool restricted = false;
    bool dropped_identity = false;
};

// Merges entries i and j (1-based, i < j); entry j is braided next to i first.
inline coalesce_result coalesce(const group& G, tuple_t t, std::size_t i, std::size_t j = 0)
{
    if (j == 0) j = i + 1;
    if (i < 1 || i >= j || j > t.size()) throw bad_input("coalescing positions out of range");
    for (std::size_t k = j - 1; k > i; --k) t = q_move(std::move(t), k, true);
    coalesce_result res;
    perm merged = t[i - 1] * t[i];
    t.erase(t.begin() + static_cast<long>(i));
    if (merged.is_identity()) {
        t.erase(t.begin() + static_cast<long>(i - 1));
        res.dropped_identity = true;
    } else {
        t[i - 1] = merged;
    }
    res.tuple = t;
    res.restricted = generates(G, t);
    return res;
}

inline bool coalesce_genus_check(const cover& before, const cover& after) { return genus(after) <= genus(before); }

inline std::vector<paired_cover> paired_enumerate(const nielsen_spec& spec, std::size_t limit = 0)
{
    if (!spec.second) throw bad_input("paired enumeration needs a second representation");
    homomorphism phi(spec.G, *spec.second);
    auto en = enumerate(spec);
    std::vector<paired_cover> out;
    for (auto& t : en.elements) {
        auto labels = default_labels(t.size());
        cover s{spec.G.degree(), labels, t};
        cover u{spec.second->front().degree(), labels, {}};
        for (auto& x : t) u.cycles.push_back(phi(x));
        out.push_back(paired_cover{labels, s, u});
        if (limit && out.size() >= limit) break;
    }
    return out;
}

// JSON

inline std::string tuple_str(const tuple_t& t)
{
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? ", " : "") + t[i].str();
    return s;
}

inline nielsen_spec nielsen_from_json(const nlohmann::json& j)
{
    try {
        nielsen_spec spec;
        auto n = j.at("degree").get<std::size_t>();
        std::vector<perm> gens;
        for (auto& g : j.at("generators")) gens.push_back(perm::parse(g.get<std::string>(), n));
        spec.G = group(n, gens);
        auto cls = j.at("classes");
        std::vector<std::size_t> mult(cls.size(), 1);
        if (j.contains("multiplicities")) mult = j.at("multiplicities").get<std::vector<std::size_t>>();
        if (mult.size() != cls.size()) throw bad_input("multiplicities and classes differ in length");
        for (std::size_t k = 0; k < cls.size(); ++k) {
            auto p = perm::parse(cls[k].get<std::string>(), n);
            if (!spec.G.contains(p)) throw bad_input("class representative not in group");
            for (std::size_t c = 0; c < mult[k]; ++c) spec.classes.push_back(p);
        }
        if (j.contains("mode")) spec.mode = parse_equivalence(j.at("mode").get<std::string>());
        if (j.contains("ordered")) spec.ordered = j.at("ordered").get<bool>();
        if (j.contains("outer"))
            for (auto& o : j.at("outer")) spec.outer.push_back(perm::parse(o.get<std::string>(), n));
        if (j.contains("second")) {
            auto& s = j.at("second");
            auto d = s.at("degree").get<std::size_t>();
            std::vector<perm> im;
            for (auto& g : s.at("generators")) im.push_back(perm::parse(g.get<std::string>(), d));
            spec.second = im;
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw bad_input(std::string("nielsen json: ") + e.what());
    }
}

inline nlohmann::json to_json(const nielsen_spec& spec)
{
    nlohmann::json j;
    j["degree"] = spec.G.degree();
    auto& g = j["generators"] = nlohmann::json::array();
    for (auto& p : spec.G.generators()) g.push_back(p.str());
    auto& c = j["classes"] = nlohmann::json::array();
    for (auto& p : spec.classes) c.push_back(p.str());
    j["mode"] = to_string(spec.mode);
    j["ordered"] = spec.ordered;
    if (!spec.outer.empty()) {
        auto& o = j["outer"] = nlohmann::json::array();
        for (auto& p : spec.outer) o.push_back(p.str());
    }
    if (spec.second) {
        auto& s = j["second"];
        s["degree"] = spec.second->front().degree();
        auto& sg = s["generators"] = nlohmann::json::array();
        for (auto& p : *spec.second) sg.push_back(p.str());
    }
    return j;
}

}  // namespace bc
