#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <bc/perm.hpp>

namespace oracle {

// Closure by breadth-first multiplication.
inline std::set<bc::perm> closure(std::size_t n, const std::vector<bc::perm>& gens)
{
    std::set<bc::perm> seen{bc::perm::identity(n)};
    std::vector<bc::perm> todo{bc::perm::identity(n)};
    while (!todo.empty()) {
        auto x = todo.back();
        todo.pop_back();
        for (auto& g : gens) {
            auto y = x * g;
            if (seen.insert(y).second) todo.push_back(y);
        }
    }
    return seen;
}

inline bc::perm random_perm(std::size_t n, std::mt19937& rng)
{
    std::vector<bc::letter> img(n);
    for (bc::letter i = 0; i < n; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    return bc::perm(img);
}

// Number of cycles by direct tracing, independent of perm::cycles.
inline std::size_t count_cycles(const bc::perm& p)
{
    std::vector<bool> seen(p.degree());
    std::size_t c = 0;
    for (bc::letter i = 0; i < p.degree(); ++i) {
        if (seen[i]) continue;
        ++c;
        for (auto j = i; !seen[j]; j = p(j)) seen[j] = true;
    }
    return c;
}

// Orbits of the group generated by gens on letters, by union-find.
inline std::vector<std::vector<bc::letter>> orbits(std::size_t n, const std::vector<bc::perm>& gens)
{
    std::vector<bc::letter> parent(n);
    for (bc::letter i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](bc::letter x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& g : gens)
        for (bc::letter i = 0; i < n; ++i) parent[find(i)] = find(g(i));
    std::vector<std::vector<bc::letter>> by_root(n);
    for (bc::letter i = 0; i < n; ++i) by_root[find(i)].push_back(i);
    std::vector<std::vector<bc::letter>> out;
    for (auto& o : by_root)
        if (!o.empty()) out.push_back(o);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace oracle
