#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "group.hpp"
#include "perm.hpp"

namespace bc {

using rational = boost::rational<long long>;

inline std::string to_string(const rational& q)
{
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// Branch-cycle description of a cover of the sphere.
struct cover {
    std::size_t degree = 1;
    std::vector<std::string> branch_points;
    std::vector<perm> cycles;

    std::size_t r() const { return cycles.size(); }
    bool operator==(const cover&) const = default;

    group monodromy() const { return group(degree, cycles); }

    perm product() const
    {
        perm p = perm::identity(degree);
        for (auto& c : cycles) p = p * c;
        return p;
    }

    std::size_t index_sum() const
    {
        std::size_t s = 0;
        for (auto& c : cycles) s += c.index();
        return s;
    }
};

inline std::vector<std::string> default_labels(std::size_t r)
{
    std::vector<std::string> l;
    for (std::size_t i = 1; i <= r; ++i) l.push_back("z" + std::to_string(i));
    return l;
}

inline cover make_cover(std::size_t n, std::vector<perm> cycles, std::vector<std::string> labels = {})
{
    if (labels.empty()) labels = default_labels(cycles.size());
    return cover{n, std::move(labels), std::move(cycles)};
}

inline cover make_cover(std::size_t n, const std::vector<std::string>& cycle_text, std::vector<std::string> labels = {})
{
    std::vector<perm> cs;
    for (auto& t : cycle_text) cs.push_back(perm::parse(t, n));
    return make_cover(n, std::move(cs), std::move(labels));
}

struct validity_report {
    bool well_formed = true;
    bool no_identity = true;
    bool product_one = true;
    bool transitive = true;
    std::vector<std::vector<std::size_t>> cycle_types;
    std::vector<std::string> problems;

    bool valid() const { return well_formed && no_identity && product_one && transitive; }
};

inline validity_report validate(const cover& c)
{
    validity_report rep;
    if (c.degree < 1) {
        rep.well_formed = false;
        rep.problems.push_back("degree must be positive");
    }
    if (c.branch_points.size() != c.cycles.size()) {
        rep.well_formed = false;
        rep.problems.push_back("branch point and cycle counts differ");
    }
    std::set<std::string> labels(c.branch_points.begin(), c.branch_points.end());
    if (labels.size() != c.branch_points.size()) {
        rep.well_formed = false;
        rep.problems.push_back("repeated branch point label");
    }
    for (auto& p : c.cycles) {
        if (p.degree() != c.degree) {
            rep.well_formed = false;
            rep.problems.push_back("cycle degree mismatch");
            return rep;
        }
        if (p.is_identity()) rep.no_identity = false;
        rep.cycle_types.push_back(p.cycle_type());
    }
    if (!rep.no_identity) rep.problems.push_back("identity branch cycle");
    if (!c.product().is_identity()) {
        rep.product_one = false;
        rep.problems.push_back("product-one fails");
    }
    if (!c.monodromy().is_transitive()) {
        rep.transitive = false;
        rep.problems.push_back("generation fails: not transitive");
    }
    return rep;
}

inline void require_valid(const cover& c)
{
    auto rep = validate(c);
    if (!rep.valid()) throw invalid(rep.problems.empty() ? "invalid cover" : rep.problems.front());
}

// Genus from 2(n + g - 1) = sum of indices.
inline long long rh_genus(std::size_t n, std::size_t index_sum)
{
    long long twice = static_cast<long long>(index_sum) - 2 * static_cast<long long>(n) + 2;
    if (twice % 2 != 0 || twice < 0) throw invalid("Riemann-Hurwitz inconsistency");
    return twice / 2;
}

inline long long genus(const cover& c)
{
    require_valid(c);
    return rh_genus(c.degree, c.index_sum());
}

inline long long galois_closure_genus(const cover& c)
{
    require_valid(c);
    auto G = static_cast<long long>(c.monodromy().order());
    long long s = 0;
    for (auto& p : c.cycles) {
        auto o = static_cast<long long>(p.order());
        s += G / o * (o - 1);
    }
    long long twice = s - 2 * G + 2;
    if (twice % 2 != 0 || twice < 0) throw invalid("Riemann-Hurwitz inconsistency");
    return twice / 2;
}

inline rational orbifold_char(const cover& c)
{
    rational q(2);
    for (auto& p : c.cycles) q += rational(1, static_cast<long long>(p.order())) - 1;
    return q;
}

// u coprime to n with x^u conjugate to x in g; x an n-cycle.
inline std::vector<unsigned> multipliers(const group& g, const perm& x)
{
    auto n = g.degree();
    if (x.cycle_type() != std::vector<std::size_t>{n}) throw invalid("class is not of n-cycles");
    auto cls = g.conjugacy_class(x);
    std::vector<unsigned> out;
    for (unsigned u = 1; u < std::max<std::size_t>(n, 2); ++u) {
        if (std::gcd<std::size_t>(u, n) != 1) continue;
        if (std::binary_search(cls.begin(), cls.end(), x.pow(u))) out.push_back(u);
    }
    return out;
}

// Drops identity entries along with their labels.
inline cover drop_identities(const cover& c)
{
    cover out{c.degree, {}, {}};
    for (std::size_t i = 0; i < c.cycles.size(); ++i) {
        if (c.cycles[i].is_identity()) continue;
        out.branch_points.push_back(c.branch_points[i]);
        out.cycles.push_back(c.cycles[i]);
    }
    return out;
}

inline cover induced_cover(const cover& c, const group& h)
{
    auto G = group(c.degree, c.cycles);
    auto act = G.coset_action(h);
    cover out{act.empty() ? 1 : act.front().degree(), c.branch_points, act};
    return drop_identities(out);
}

// Quotient cover on the blocks of a block system, blocks labelled by BFS from the block of letter 1.
inline cover quotient_cover(const cover& c, const block_system& bs, bool keep_identities = false)
{
    std::vector<letter> which(c.degree);
    for (letter b = 0; b < bs.blocks.size(); ++b)
        for (auto x : bs.blocks[b]) which[x] = b;
    auto k = bs.blocks.size();
    std::vector<letter> label(k, static_cast<letter>(-1));
    std::vector<letter> order{which[0]};
    label[which[0]] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
        for (auto& p : c.cycles) {
            letter nb = which[p(bs.blocks[order[h]].front())];
            if (label[nb] == static_cast<letter>(-1)) {
                label[nb] = static_cast<letter>(order.size());
                order.push_back(nb);
            }
        }
    if (order.size() != k) throw invalid("quotient requires a transitive cover");
    cover out{k, c.branch_points, {}};
    for (auto& p : c.cycles) {
        std::vector<letter> img(k);
        for (letter b = 0; b < k; ++b) img[label[b]] = label[which[p(bs.blocks[b].front())]];
        out.cycles.emplace_back(std::move(img));
    }
    return keep_identities ? out : drop_identities(out);
}

struct entanglement {
    bool galois = false;
    bool davenport = false;
};

// Joint group of two generator-image lists on disjoint letters m + n.
inline group joint_group(const std::vector<perm>& a, const std::vector<perm>& b)
{
    if (a.size() != b.size()) throw bad_input("generator lists differ in length");
    std::size_t m = a.empty() ? 1 : a.front().degree();
    std::size_t n = b.empty() ? 1 : b.front().degree();
    std::vector<perm> j;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<letter> img(m + n);
        for (letter x = 0; x < m; ++x) img[x] = a[i](x);
        for (letter y = 0; y < n; ++y) img[m + y] = static_cast<letter>(m) + b[i](y);
        j.emplace_back(std::move(img));
    }
    return group(m + n, j);
}

inline bool common_group(const std::vector<perm>& a, const std::vector<perm>& b)
{
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    auto ga = group(a.front().degree(), a);
    auto gb = group(b.front().degree(), b);
    auto j = joint_group(a, b);
    return j.order() == ga.order() && j.order() == gb.order();
}

inline entanglement character_entanglement(const std::vector<perm>& t1, const std::vector<perm>& t2)
{
    if (!common_group(t1, t2)) throw invalid("actions are not of a common group");
    entanglement e{true, true};
    if (t1.empty()) return e;
    std::size_t m = t1.front().degree();
    auto j = joint_group(t1, t2);
    j.for_each_element([&](const perm& g) {
        std::size_t a = 0, b = 0;
        for (letter x = 0; x < g.degree(); ++x)
            if (g(x) == x) (x < m ? a : b)++;
        if (a != b) e.galois = false;
        if ((a > 0) != (b > 0)) e.davenport = false;
    });
    return e;
}

inline std::vector<std::size_t> self_fiber_subdegrees(const cover& c)
{
    auto st = c.monodromy().stabilizer(0);
    std::vector<std::size_t> out;
    for (auto& o : st.orbits()) out.push_back(o.size());
    std::sort(out.begin(), out.end());
    return out;
}

// JSON

inline nlohmann::json to_json(const cover& c)
{
    nlohmann::json j;
    j["degree"] = c.degree;
    j["branch_points"] = c.branch_points;
    auto& cy = j["cycles"] = nlohmann::json::array();
    for (auto& p : c.cycles) cy.push_back(p.str());
    return j;
}

inline cover cover_from_json(const nlohmann::json& j)
{
    try {
        cover c;
        c.degree = j.at("degree").get<std::size_t>();
        if (c.degree < 1) throw bad_input("degree must be positive");
        for (auto& t : j.at("cycles")) c.cycles.push_back(perm::parse(t.get<std::string>(), c.degree));
        if (j.contains("branch_points"))
            c.branch_points = j.at("branch_points").get<std::vector<std::string>>();
        else
            c.branch_points = default_labels(c.cycles.size());
        if (c.branch_points.size() != c.cycles.size()) throw bad_input("branch point and cycle counts differ");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw bad_input(std::string("cover json: ") + e.what());
    }
}

}  // namespace bc
