#pragma once

#include <bc/catalog.hpp>
#include <bc/group.hpp>
#include <bc/perm.hpp>

namespace fx {

inline bc::perm p7(const char* s) { return bc::perm::parse(s, 7); }

inline bc::group deg7_group() { return bc::group(7, {p7("(1 3)(4 5)"), p7("(1 4 6 7)(2 3)")}); }

inline bc::perm sigma_inf() { return p7("(1 2 3 4 5 6 7)").inverse(); }

// First subgroup of the given order generated by two elements of the given orders.
inline bc::group find_subgroup(const bc::group& g, std::uint64_t oa, std::uint64_t ob, std::uint64_t order)
{
    auto els = g.elements();
    for (auto& a : els)
        if (a.order() == oa)
            for (auto& b : els)
                if (b.order() == ob) {
                    bc::group h(g.degree(), {a, b});
                    if (h.order() == order) return h;
                }
    throw bc::invalid("no such subgroup");
}

}  // namespace fx
