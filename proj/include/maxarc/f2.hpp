#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace maxarc::f2 {

// Linear algebra over F2 with vectors packed into 32-bit rows.
// The canonical reduced form keeps one row per pivot (the row's most
// significant set bit), every pivot cleared from all other rows, and rows
// sorted ascending by value. Two subspaces are equal iff their canonical
// bases are equal as vectors.

inline int msb(std::uint32_t v) { return 31 - __builtin_clz(v); }

// Inserts v into a canonical basis; returns true if the span grew.
inline bool basis_insert(std::vector<std::uint32_t>& basis, std::uint32_t v) {
    for (std::uint32_t row : basis) {
        if (v != 0 && (v >> msb(row) & 1)) v ^= row;
    }
    if (v == 0) return false;
    const int p = msb(v);
    for (std::uint32_t& row : basis) {
        if (row >> p & 1) row ^= v;
    }
    basis.insert(std::upper_bound(basis.begin(), basis.end(), v), v);
    return true;
}

inline std::vector<std::uint32_t> rref(const std::vector<std::uint32_t>& rows) {
    std::vector<std::uint32_t> basis;
    for (std::uint32_t v : rows) basis_insert(basis, v);
    return basis;
}

inline int rank(const std::vector<std::uint32_t>& rows) {
    return static_cast<int>(rref(rows).size());
}

inline bool in_span(const std::vector<std::uint32_t>& basis, std::uint32_t v) {
    for (std::uint32_t row : basis) {
        if (v != 0 && (v >> msb(row) & 1)) v ^= row;
    }
    return v == 0;
}

// Canonical basis of {x in F2^ncols : popcount(eq & x) even for all eq}.
inline std::vector<std::uint32_t> nullspace(const std::vector<std::uint32_t>& equations, int ncols) {
    const std::vector<std::uint32_t> eqs = rref(equations);
    std::uint32_t pivot_mask = 0;
    for (std::uint32_t eq : eqs) pivot_mask |= 1u << msb(eq);

    std::vector<std::uint32_t> basis;
    for (int j = 0; j < ncols; ++j) {
        if (pivot_mask >> j & 1) continue;
        std::uint32_t v = 1u << j;
        for (std::uint32_t eq : eqs) v |= (eq >> j & 1) << msb(eq);
        basis_insert(basis, v);
    }
    return basis;
}

}  // namespace maxarc::f2
