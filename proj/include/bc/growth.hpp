#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "catalog.hpp"
#include "cover.hpp"
#include "fiber.hpp"

namespace bc {

// g1 families over the y-line:
//   chebychev-aligned: d-cycle at the highest-order branch point of prW, involutions at two of its involution points
//   chebychev-generic: involutions and d-cycle at fresh points w1, w2, w3
//   dihedral-generic:  four involutions of D_d at fresh points w1..w4 (d >= 3)
inline cover growth_g1(const std::string& family, std::size_t d, const cover& prW)
{
    if (family == "chebychev-generic") return chebychev_cover(d, {"w1", "w2", "w3"});
    if (family == "dihedral-generic") {
        if (d < 3) throw bad_input("dihedral-generic needs degree at least 3");
        auto c = build_dihedral(d, "C2^4");
        c.branch_points = {"w1", "w2", "w3", "w4"};
        return c;
    }
    if (family == "chebychev-aligned") {
        std::size_t top = 0;
        for (std::size_t i = 1; i < prW.r(); ++i)
            if (prW.cycles[i].order() > prW.cycles[top].order()) top = i;
        std::vector<std::string> inv;
        for (std::size_t i = 0; i < prW.r(); ++i)
            if (i != top && prW.cycles[i].order() == 2) inv.push_back(prW.branch_points[i]);
        if (inv.size() < 1) inv.push_back("w1");
        if (inv.size() < 2) inv.push_back("w2");
        return chebychev_cover(d, {inv[0], inv[1], prW.branch_points[top]});
    }
    throw bad_input("unknown g1 family: " + family);
}

struct growth_row {
    std::size_t degree = 0;
    cover g1;
    std::vector<std::pair<std::size_t, long long>> components;  // (degree over w, genus)
    long long min_genus = 0;
    bool has_genus0 = false;
    screen_report screen;
    bool flagged = false;
};

inline growth_row growth_step(const cover& prW, const cover& g1)
{
    growth_row row;
    row.degree = g1.degree;
    row.g1 = g1;
    auto pc = align_covers(prW, g1);
    auto comps = tensor_components(pc);
    row.min_genus = -1;
    for (auto& c : comps) {
        auto g = genus_method1(pc, c);
        row.components.emplace_back(c.deg_z, g);
        if (row.min_genus < 0 || g < row.min_genus) row.min_genus = g;
        if (g == 0) row.has_genus0 = true;
    }
    row.screen = screen_g1(prW, g1);
    row.flagged = row.screen.fail2a || row.screen.fail2b || row.screen.fail2c;
    return row;
}

inline std::vector<growth_row> growth_table(const cover& prW, const std::string& family, std::size_t max_degree,
                                            std::size_t min_degree = 2)
{
    std::vector<growth_row> out;
    for (std::size_t d = std::max<std::size_t>(min_degree, 2); d <= max_degree; ++d) {
        if (family == "dihedral-generic" && d < 3) continue;
        out.push_back(growth_step(prW, growth_g1(family, d, prW)));
    }
    return out;
}

inline nlohmann::json to_json(const growth_row& r)
{
    nlohmann::json j;
    j["degree"] = r.degree;
    j["g1"] = to_json(r.g1);
    auto& cs = j["components"] = nlohmann::json::array();
    for (auto& [d, g] : r.components) cs.push_back({{"deg", d}, {"genus", g}});
    j["min_genus"] = r.min_genus;
    j["has_genus0"] = r.has_genus0;
    j["fail2a"] = r.screen.fail2a;
    j["fail2b"] = r.screen.fail2b;
    j["fail2c"] = r.screen.fail2c;
    j["flagged"] = r.flagged;
    return j;
}

}  // namespace bc
