#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "cover.hpp"
#include "group.hpp"
#include "perm.hpp"

namespace bc {

// Two covers of the same base with a shared branch-point list; sigma on x-letters, tau on y-letters.
struct paired_cover {
    std::vector<std::string> branch_points;
    cover sigma;
    cover tau;

    std::size_t m() const { return sigma.degree; }
    std::size_t n() const { return tau.degree; }
    std::size_t r() const { return branch_points.size(); }

    // Joint element i on the disjoint union of x- and y-letters.
    std::vector<perm> joint_generators() const { return joint_group(sigma.cycles, tau.cycles).generators(); }
    group joint() const { return joint_group(sigma.cycles, tau.cycles); }

    // Joint element i on tensor letters x*n + y.
    perm tensor(std::size_t i) const
    {
        auto nn = n();
        std::vector<letter> img(m() * nn);
        for (letter x = 0; x < m(); ++x)
            for (letter y = 0; y < nn; ++y) img[x * nn + y] = static_cast<letter>(sigma.cycles[i](x) * nn + tau.cycles[i](y));
        return perm(std::move(img));
    }
};

struct pair_report {
    bool sigma_valid = false;
    bool tau_valid = false;
    bool labels_agree = false;
    bool orders_agree = false;
    bool common_group = false;
    bool ok() const { return sigma_valid && tau_valid && labels_agree && orders_agree && common_group; }
};

inline pair_report check_pair(const paired_cover& pc)
{
    pair_report rep;
    rep.sigma_valid = validate(pc.sigma).valid();
    rep.tau_valid = validate(pc.tau).valid();
    rep.labels_agree = pc.sigma.branch_points == pc.branch_points && pc.tau.branch_points == pc.branch_points &&
                       pc.sigma.r() == pc.tau.r();
    if (!rep.labels_agree) return rep;
    rep.orders_agree = true;
    for (std::size_t i = 0; i < pc.r(); ++i)
        if (pc.sigma.cycles[i].order() != pc.tau.cycles[i].order()) rep.orders_agree = false;
    rep.common_group = common_group(pc.sigma.cycles, pc.tau.cycles);
    return rep;
}

inline paired_cover make_pair(const cover& s, const cover& t)
{
    paired_cover pc{s.branch_points, s, t};
    auto rep = check_pair(pc);
    if (!rep.ok()) throw invalid("paired cover invariants fail");
    return pc;
}

// Fiber product data of two covers of the same base, aligned on labels; no common-group requirement.
// Labels of b absent from a are appended; missing entries are identities.
inline paired_cover align_covers(const cover& a, const cover& b)
{
    paired_cover pc;
    pc.branch_points = a.branch_points;
    for (auto& l : b.branch_points)
        if (std::find(pc.branch_points.begin(), pc.branch_points.end(), l) == pc.branch_points.end())
            pc.branch_points.push_back(l);
    auto fill = [&](const cover& c) {
        cover out{c.degree, pc.branch_points, {}};
        for (auto& l : pc.branch_points) {
            auto it = std::find(c.branch_points.begin(), c.branch_points.end(), l);
            out.cycles.push_back(it == c.branch_points.end() ? perm::identity(c.degree)
                                                             : c.cycles[static_cast<std::size_t>(it - c.branch_points.begin())]);
        }
        return out;
    };
    pc.sigma = fill(a);
    pc.tau = fill(b);
    return pc;
}

struct component {
    std::vector<letter> orbit;  // tensor letters x*n + y, sorted
    std::size_t deg_z = 0;
    std::size_t k = 0;  // degree over x
    std::size_t l = 0;  // degree over y
    std::vector<letter> J;  // x-letters paired with y1
    std::vector<letter> I;  // y-letters paired with x1
};

inline std::vector<component> tensor_components(const paired_cover& pc)
{
    auto m = pc.m(), n = pc.n();
    std::vector<perm> gens;
    for (std::size_t i = 0; i < pc.r(); ++i) gens.push_back(pc.tensor(i));
    std::vector<bool> seen(m * n);
    std::vector<component> out;
    for (letter s = 0; s < m * n; ++s) {
        if (seen[s]) continue;
        component c;
        c.orbit.push_back(s);
        seen[s] = true;
        for (std::size_t h = 0; h < c.orbit.size(); ++h)
            for (auto& g : gens) {
                letter t = g(c.orbit[h]);
                if (!seen[t]) {
                    seen[t] = true;
                    c.orbit.push_back(t);
                }
            }
        std::sort(c.orbit.begin(), c.orbit.end());
        c.deg_z = c.orbit.size();
        c.k = c.deg_z / m;
        c.l = c.deg_z / n;
        for (auto t : c.orbit) {
            if (t % n == 0) c.J.push_back(static_cast<letter>(t / n));
            if (t / n == 0) c.I.push_back(static_cast<letter>(t % n));
        }
        out.push_back(std::move(c));
    }
    return out;
}

struct correspondence {
    std::vector<letter> J;  // orbit of G(T2,y1) on x-letters
    std::vector<letter> I;  // orbit of G(T1,x1) on y-letters
};

// Orbits of the point stabilizers, matched to components.
inline std::vector<correspondence> component_correspondence(const paired_cover& pc)
{
    auto m = pc.m();
    auto G = pc.joint();
    auto sy = G.stabilizer(static_cast<letter>(m));
    auto sx = G.stabilizer(0);
    std::vector<correspondence> out;
    for (auto& c : tensor_components(pc)) {
        correspondence cr;
        auto ox = sy.orbit(c.J.front());
        auto oy = sx.orbit(static_cast<letter>(m + c.I.front()));
        for (auto x : ox) cr.J.push_back(x);
        for (auto y : oy) cr.I.push_back(static_cast<letter>(y - m));
        out.push_back(std::move(cr));
    }
    return out;
}

inline std::vector<perm> restrict_to_component(const paired_cover& pc, const component& c)
{
    std::vector<perm> out;
    for (std::size_t i = 0; i < pc.r(); ++i) out.push_back(pc.tensor(i).restrict_to(c.orbit));
    return out;
}

inline long long base_genus(const cover& c)
{
    return rh_genus(c.degree, c.index_sum());
}

// Riemann-Hurwitz on the restriction of the joint tuple to the orbit; base of genus 0.
inline long long genus_method1(const paired_cover& pc, const component& c)
{
    std::size_t s = 0;
    for (auto& p : restrict_to_component(pc, c)) s += p.index();
    return rh_genus(c.deg_z, s);
}

struct ram_point {
    std::size_t branch = 0;
    letter x_cycle = 0;  // least letter
    letter y_cycle = 0;
    std::size_t s = 0;
    std::size_t t = 0;
    std::size_t count = 0;
    std::size_t e_over_y = 0;
    std::size_t e_over_x = 0;
};

inline std::vector<ram_point> ramification_profile(const paired_cover& pc)
{
    std::vector<ram_point> out;
    for (std::size_t i = 0; i < pc.r(); ++i) {
        auto xc = pc.sigma.cycles[i].cycles(true);
        auto yc = pc.tau.cycles[i].cycles(true);
        for (auto& yy : yc)
            for (auto& xx : xc) {
                ram_point p;
                p.branch = i;
                p.x_cycle = xx.front();
                p.y_cycle = yy.front();
                p.s = xx.size();
                p.t = yy.size();
                p.count = std::gcd(p.s, p.t);
                auto L = std::lcm(p.s, p.t);
                p.e_over_y = L / p.t;
                p.e_over_x = L / p.s;
                out.push_back(p);
            }
    }
    return out;
}

// Unadjusted branch-cycle entries of W -> Y at the points over each z: one per tau-cycle.
struct pry_entry {
    std::size_t branch = 0;
    letter y_base = 0;
    std::size_t t = 0;
    perm g;
};

inline std::vector<pry_entry> pry_entries(const paired_cover& pc, const component& c)
{
    auto m = pc.m();
    auto G = pc.joint();
    auto tr = G.transversal(static_cast<letter>(m));  // y1 -> y
    auto gens = G.generators();
    std::vector<pry_entry> out;
    for (std::size_t i = 0; i < pc.r(); ++i) {
        for (auto& cyc : pc.tau.cycles[i].cycles(true)) {
            letter yb = cyc.front();
            auto& u = tr[m + yb];
            if (!u) throw invalid("tau cover is not transitive");
            perm g = (*u * gens[i].pow(static_cast<long long>(cyc.size())) * u->inverse());
            std::vector<letter> img(c.J.size());
            std::vector<letter> pos(m, static_cast<letter>(-1));
            for (letter k = 0; k < c.J.size(); ++k) pos[c.J[k]] = k;
            for (letter k = 0; k < c.J.size(); ++k) img[k] = pos[g(c.J[k])];
            out.push_back({i, yb, cyc.size(), perm(std::move(img))});
        }
    }
    return out;
}

inline long long genus_method2(const paired_cover& pc, const component& c)
{
    std::size_t s = 0;
    for (auto& e : pry_entries(pc, c)) s += e.g.index();
    long long gy = base_genus(pc.tau);
    long long twice = static_cast<long long>(c.l) * (2 * gy - 2) + static_cast<long long>(s) + 2;
    if (twice % 2 != 0 || twice < 0) throw invalid("Riemann-Hurwitz inconsistency");
    return twice / 2;
}

// Finds c_j conjugate to e_j in K, c_1 = e_1, with product one and transitive; order of entries kept.
inline std::optional<std::vector<perm>> realize_product_one(const group& K, const std::vector<perm>& e)
{
    auto k = e.size();
    auto d = K.degree();
    if (k == 0) return d == 1 ? std::optional<std::vector<perm>>(std::vector<perm>{}) : std::nullopt;
    std::vector<std::vector<perm>> cls;
    for (auto& x : e) cls.push_back(K.conjugacy_class(x));
    // reach[j]: prefixes P with P * c_j ... c_k = 1 achievable.
    std::vector<std::unordered_set<perm, perm_hash>> reach(k + 1);
    reach[k].insert(perm::identity(d));
    std::uint64_t work = 0;
    for (std::size_t j = k; j-- > 1;) {
        for (auto& q : reach[j + 1])
            for (auto& c : cls[j]) {
                reach[j].insert(q * c.inverse());
                if (++work > caps::get().nielsen_search) throw cap_exceeded("product-one search exceeds cap");
            }
    }
    std::vector<perm> pick{e[0]};
    if (!reach[1].count(e[0])) return std::nullopt;
    std::optional<std::vector<perm>> found;
    std::function<void(std::size_t, const perm&)> dfs = [&](std::size_t j, const perm& prefix) {
        if (found) return;
        if (j == k) {
            if (group(d, pick).is_transitive()) found = pick;
            return;
        }
        // Prefer the unadjusted entry.
        std::vector<const perm*> order{&e[j]};
        for (auto& c : cls[j])
            if (c != e[j]) order.push_back(&c);
        for (auto* c : order) {
            perm p = prefix * *c;
            if (!reach[j + 1].count(p)) continue;
            pick.push_back(*c);
            dfs(j + 1, p);
            pick.pop_back();
            if (found) return;
            if (++work > caps::get().nielsen_search) throw cap_exceeded("product-one search exceeds cap");
        }
    };
    dfs(1, e[0]);
    return found;
}

// Branch cycles of W -> P^1_y, degree l, labels "<z-label>:y<letter>".
inline cover pry_branch_cycles(const paired_cover& pc, const component& c)
{
    if (base_genus(pc.tau) != 0) throw invalid("tau cover does not have genus 0");
    auto entries = pry_entries(pc, c);
    std::vector<perm> e;
    std::vector<std::string> labels;
    for (auto& x : entries) {
        if (x.g.is_identity()) continue;
        e.push_back(x.g);
        labels.push_back(pc.branch_points[x.branch] + ":y" + std::to_string(x.y_base + 1));
    }
    auto m = pc.m();
    auto G = pc.joint();
    auto st = G.stabilizer(static_cast<letter>(m));
    std::vector<perm> kg;
    for (auto& s : st.generators()) kg.push_back(s.restrict_to(c.J));
    group K = group::generated_by(c.J.size(), kg);
    auto fixed = realize_product_one(K, e);
    if (!fixed) throw invalid("could not realize product-one for projection branch cycles");
    return cover{c.J.size(), labels, *fixed};
}

inline paired_cover swapped(const paired_cover& pc) { return paired_cover{pc.branch_points, pc.tau, pc.sigma}; }

// The component of the swapped pair matching c.
inline component swapped_component(const paired_cover& pc, const component& c)
{
    auto sw = swapped(pc);
    letter t = c.orbit.front();
    letter x = t / static_cast<letter>(pc.n()), y = t % static_cast<letter>(pc.n());
    letter target = y * static_cast<letter>(pc.m()) + x;
    for (auto& d : tensor_components(sw))
        if (std::binary_search(d.orbit.begin(), d.orbit.end(), target)) return d;
    throw invalid("component not found in swapped pair");
}

inline cover prx_branch_cycles(const paired_cover& pc, const component& c)
{
    auto sw = swapped(pc);
    auto d = swapped_component(pc, c);
    auto out = pry_branch_cycles(sw, d);
    for (auto& l : out.branch_points) {
        auto p = l.rfind(":y");
        if (p != std::string::npos) l.replace(p, 2, ":x");
    }
    return out;
}

// Index of H = G(T1,x) cap G(T2,y) for the least tensor letter (x,y) of the component.
inline std::uint64_t component_subgroup_index(const paired_cover& pc, const component& c)
{
    auto G = pc.joint();
    letter t = c.orbit.front();
    letter x = t / static_cast<letter>(pc.n()), y = t % static_cast<letter>(pc.n());
    auto H = G.stabilizer(x).stabilizer(static_cast<letter>(pc.m() + y));
    return G.order() / H.order();
}

inline long long double_transitive_complement(const cover& c)
{
    auto G = c.monodromy();
    auto st = G.stabilizer(0);
    if (c.degree > 1 && st.orbit(c.degree > 1 ? 1 : 0).size() != c.degree - 1)
        throw invalid("cover is not doubly transitive");
    auto m = static_cast<long long>(c.degree);
    if (m == 1) throw invalid("degree-1 cover has no complement");
    long long R = 0;
    for (auto& p : c.cycles) {
        auto cs = p.cycles(true);
        for (std::size_t a = 0; a < cs.size(); ++a)
            for (std::size_t b = 0; b < cs.size(); ++b) {
                if (a == b) continue;
                auto s1 = static_cast<long long>(cs[a].size()), s2 = static_cast<long long>(cs[b].size());
                R += std::gcd(s1, s2) * (std::lcm(s1, s2) / s1 - 1);
            }
    }
    long long gx = genus(c);
    long long twice = (m - 1) * (2 * gx - 2) + R + 2;
    if (twice % 2 != 0 || twice < 0) throw invalid("Riemann-Hurwitz inconsistency");
    return twice / 2;
}

// Simultaneous conjugacy of two tuples of transitive permutations on the same letters.
inline std::optional<perm> tuple_equivalence(const std::vector<perm>& a, const std::vector<perm>& b)
{
    if (a.size() != b.size()) return std::nullopt;
    if (a.empty()) return std::nullopt;
    auto d = a.front().degree();
    if (b.front().degree() != d) return std::nullopt;
    for (letter j = 0; j < d; ++j) {
        std::vector<letter> img(d, static_cast<letter>(-1));
        img[0] = j;
        std::vector<letter> q{0};
        bool ok = true;
        for (std::size_t h = 0; h < q.size() && ok; ++h)
            for (std::size_t i = 0; i < a.size() && ok; ++i) {
                letter u = a[i](q[h]), v = b[i](img[q[h]]);
                if (img[u] == static_cast<letter>(-1)) {
                    img[u] = v;
                    q.push_back(u);
                } else if (img[u] != v) {
                    ok = false;
                }
            }
        if (!ok || q.size() != d) continue;
        std::vector<bool> used(d);
        for (auto v : img) {
            if (used[v]) ok = false;
            used[v] = true;
        }
        if (ok) return perm(img);
    }
    return std::nullopt;
}

inline bool equivalent_covers(const cover& a, const cover& b)
{
    if (a.degree != b.degree) return false;
    auto pc = align_covers(a, b);
    return tuple_equivalence(pc.sigma.cycles, pc.tau.cycles).has_value();
}

struct clc_witness {
    block_system f_blocks;
    block_system g_blocks;
    std::size_t degree = 0;
};

inline block_system trivial_blocks(std::size_t n)
{
    block_system bs;
    for (letter i = 0; i < n; ++i) bs.blocks.push_back({i});
    return bs;
}

// Common quotient of f and g of degree > 1, largest degree first.
inline std::optional<clc_witness> detect_clc(const cover& f, const cover& g)
{
    auto candidates = [](const cover& c) {
        std::vector<block_system> v{trivial_blocks(c.degree)};
        for (auto& b : c.monodromy().block_systems()) v.push_back(b);
        std::stable_sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.blocks.size() > y.blocks.size(); });
        return v;
    };
    auto qf = candidates(f), qg = candidates(g);
    auto pc = align_covers(f, g);
    for (auto& a : qf)
        for (auto& b : qg) {
            if (a.blocks.size() != b.blocks.size()) continue;
            auto fa = quotient_cover(pc.sigma, a, true), gb = quotient_cover(pc.tau, b, true);
            if (tuple_equivalence(fa.cycles, gb.cycles)) return clc_witness{a, b, a.blocks.size()};
        }
    return std::nullopt;
}

struct genus0_witness_t {
    cover over_x;
    cover over_y;
};

inline genus0_witness_t genus0_witness(const paired_cover& pc, const component& c)
{
    if (genus_method1(pc, c) != 0) throw invalid("component genus is not 0");
    return {prx_branch_cycles(pc, c), pry_branch_cycles(pc, c)};
}

struct screen_report {
    rational pr_ochar;
    long long pr_genus = 0;
    long long pr_galois_genus = 0;
    bool fail2a = false;
    std::vector<block_system> genus0_quotients;
    bool fail2b = false;
    bool fail2c = false;
    bool fail2c_subset = false;
    bool fail2c_dominated = false;
    bool fail2c_bound = false;
    bool fail2d = false;
    bool joint_checked = false;
    std::size_t joint_components = 0;
    bool dec_var_not_excluded = false;
};

inline screen_report screen_g1(const cover& prW, const cover& g1, const std::optional<paired_cover>& joint = std::nullopt,
                               bool second_rep_known = false)
{
    require_valid(prW);
    require_valid(g1);
    screen_report rep;
    rep.pr_ochar = orbifold_char(prW);
    rep.pr_genus = genus(prW);
    rep.pr_galois_genus = galois_closure_genus(prW);
    rep.fail2a = rep.pr_ochar >= 0;

    auto blocks = prW.monodromy().block_systems();
    for (auto& bs : blocks) {
        auto q = quotient_cover(prW, bs);
        if (q.degree > 1 && genus(q) == 0) {
            rep.genus0_quotients.push_back(bs);
            if (equivalent_covers(q, g1)) rep.fail2b = true;
        }
    }
    if (rep.pr_genus == 0 && equivalent_covers(prW, g1)) rep.fail2b = true;

    if (rep.pr_genus == 1) {
        rep.fail2c_subset = true;
        rep.fail2c_dominated = true;
        for (std::size_t i = 0; i < g1.r(); ++i) {
            auto it = std::find(prW.branch_points.begin(), prW.branch_points.end(), g1.branch_points[i]);
            if (it == prW.branch_points.end()) {
                rep.fail2c_subset = false;
                continue;
            }
            if (!dominates(prW.cycles[static_cast<std::size_t>(it - prW.branch_points.begin())], g1.cycles[i]))
                rep.fail2c_dominated = false;
        }
        auto s = g1.r();
        bool all2 = std::all_of(g1.cycles.begin(), g1.cycles.end(), [](auto& p) { return p.order() == 2; });
        rep.fail2c_bound = s <= 3 || (s == 4 && all2);
        rep.fail2c = rep.fail2c_subset && rep.fail2c_dominated && rep.fail2c_bound;
    }

    if (joint) {
        if (!check_pair(*joint).ok()) throw invalid("joint data fails paired cover invariants");
        rep.joint_checked = true;
        rep.joint_components = tensor_components(*joint).size();
        rep.fail2d = rep.joint_components > 1;
    } else {
        auto pc = align_covers(prW, g1);
        rep.joint_components = tensor_components(pc).size();
    }
    rep.dec_var_not_excluded = !blocks.empty() || second_rep_known;
    return rep;
}

// JSON

inline nlohmann::json to_json(const paired_cover& pc)
{
    nlohmann::json j;
    j["branch_points"] = pc.branch_points;
    j["sigma"] = to_json(pc.sigma);
    j["tau"] = to_json(pc.tau);
    return j;
}

inline paired_cover paired_from_json(const nlohmann::json& j)
{
    try {
        paired_cover pc;
        pc.branch_points = j.at("branch_points").get<std::vector<std::string>>();
        auto s = j.at("sigma");
        auto t = j.at("tau");
        if (!s.contains("branch_points")) s["branch_points"] = pc.branch_points;
        if (!t.contains("branch_points")) t["branch_points"] = pc.branch_points;
        pc.sigma = cover_from_json(s);
        pc.tau = cover_from_json(t);
        return pc;
    } catch (const nlohmann::json::exception& e) {
        throw bad_input(std::string("pair json: ") + e.what());
    }
}

inline std::string letters_str(const std::vector<letter>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s + "}";
}

inline nlohmann::json fiber_report(const paired_cover& pc)
{
    nlohmann::json out;
    out["m"] = pc.m();
    out["n"] = pc.n();
    auto& comps = out["components"] = nlohmann::json::array();
    bool sphere = base_genus(pc.tau) == 0;
    for (auto& c : tensor_components(pc)) {
        nlohmann::json j;
        auto& orb = j["orbit"] = nlohmann::json::array();
        for (auto t : c.orbit) orb.push_back({t / pc.n() + 1, t % pc.n() + 1});
        j["deg_z"] = c.deg_z;
        j["k"] = c.k;
        j["l"] = c.l;
        j["J"] = letters_str(c.J);
        j["I"] = letters_str(c.I);
        j["genus_m1"] = genus_method1(pc, c);
        j["genus_m2"] = genus_method2(pc, c);
        j["subgroup_index"] = component_subgroup_index(pc, c);
        if (sphere) j["pry_cover"] = to_json(pry_branch_cycles(pc, c));
        comps.push_back(j);
    }
    return out;
}

}  // namespace bc
