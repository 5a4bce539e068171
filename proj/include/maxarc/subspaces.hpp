#pragma once

#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "maxarc/f2.hpp"
#include "maxarc/gf2m.hpp"

namespace maxarc {

// An F2-subspace of GF(2^m), canonicalized by its reduced echelon basis so
// set equality is plain vector equality. Rows are sorted ascending; each
// row's most significant bit is its pivot and is cleared from every other
// row. The zero subspace has an empty basis.
struct Subspace {
    FieldSpec fs;
    std::vector<gf_elem> basis;

    int dim() const { return static_cast<int>(basis.size()); }

    friend bool operator==(const Subspace&, const Subspace&) = default;
};

// Dual description: A = { x : trace(mu_i x) = 0 for all i }. The mus are
// F2-independent and there are m - dim(A) of them.
struct DualRep {
    FieldSpec fs;
    std::vector<gf_elem> mus;

    int r() const { return static_cast<int>(mus.size()); }
};

inline Subspace span(const FieldSpec& fs, const std::vector<gf_elem>& gens) {
    Subspace s{fs, {}};
    for (gf_elem g : gens) {
        if (g >> fs.m) throw std::invalid_argument("span: element outside field");
        f2::basis_insert(s.basis, g);
    }
    return s;
}

inline bool contains(const Subspace& s, gf_elem x) { return f2::in_span(s.basis, x); }

// All 2^dim members, ascending (zero first). The counter order over an
// ascending reduced basis is already the value order.
inline void members_into(const Subspace& s, std::vector<gf_elem>& out) {
    if (s.dim() > 20) throw std::invalid_argument("members: dimension too large to enumerate");
    const std::size_t n = std::size_t{1} << s.dim();
    out.assign(n, 0);
    for (std::size_t i = 1; i < n; ++i)
        out[i] = out[i & (i - 1)] ^ s.basis[static_cast<std::size_t>(__builtin_ctzll(i))];
}

inline std::vector<gf_elem> members(const Subspace& s) {
    std::vector<gf_elem> out;
    members_into(s, out);
    return out;
}

// Gram rows of the trace form: row j of the system over the unknown bit
// vector of y is { trace(x^i * a_j) }_i, so nullspaces of these bitmasks are
// exact orthogonal complements.
inline std::vector<std::uint32_t> trace_form_rows(const Field& f, const std::vector<gf_elem>& elems) {
    std::vector<std::uint32_t> rows;
    rows.reserve(elems.size());
    for (gf_elem a : elems) {
        std::uint32_t eq = 0;
        for (int i = 0; i < f.m(); ++i)
            eq |= static_cast<std::uint32_t>(f.trace(f.mul(a, 1u << i))) << i;
        rows.push_back(eq);
    }
    return rows;
}

inline DualRep dual_mus(const Field& f, const Subspace& s) {
    if (s.fs != f.spec()) throw std::invalid_argument("dual_mus: field mismatch");
    return DualRep{s.fs, f2::nullspace(trace_form_rows(f, s.basis), f.m())};
}

inline Subspace subgroup_from_mus(const Field& f, const DualRep& d) {
    if (d.fs != f.spec()) throw std::invalid_argument("subgroup_from_mus: field mismatch");
    if (f2::rank(d.mus) != d.r()) throw std::invalid_argument("subgroup_from_mus: dependent mus");
    return Subspace{d.fs, f2::nullspace(trace_form_rows(f, d.mus), f.m())};
}

// F2-valued quadratic form on GF(2^m), either from coefficient data
//   Q(x) = trace(sum_i quad[i].second * x^(2^quad[i].first + 1) + lin * x)
// or from a black-box evaluator.
struct QuadForm {
    FieldSpec fs;
    std::vector<std::pair<int, gf_elem>> quad;
    gf_elem lin = 0;
    std::function<int(gf_elem)> evaluator;

    int eval(const Field& f, gf_elem x) const {
        if (evaluator) return evaluator(x) & 1;
        gf_elem acc = f.mul(lin, x);
        for (const auto& [i, c] : quad)
            acc ^= f.mul(c, f.mul(f.frob(x, i), x));
        return f.trace(acc);
    }

    // Associated bilinear form B(x,y) = Q(x+y) + Q(x) + Q(y).
    int bilinear(const Field& f, gf_elem x, gf_elem y) const {
        return eval(f, x ^ y) ^ eval(f, x) ^ eval(f, y);
    }
};

// rad V = kernel of B, and V0 = { x in rad V : Q(x) = 0 }. Q restricted to
// rad V is F2-linear, so V0 is itself a subspace.
inline std::pair<Subspace, Subspace> radical(const Field& f, const QuadForm& q) {
    std::vector<std::uint32_t> bmat;
    for (int i = 0; i < f.m(); ++i) {
        std::uint32_t row = 0;
        for (int j = 0; j < f.m(); ++j)
            row |= static_cast<std::uint32_t>(q.bilinear(f, 1u << i, 1u << j)) << j;
        bmat.push_back(row);
    }
    Subspace rad{f.spec(), f2::nullspace(bmat, f.m())};

    std::vector<gf_elem> v0_gens;
    gf_elem pivot = 0;
    for (gf_elem w : rad.basis) {
        if (q.eval(f, w) == 0) {
            v0_gens.push_back(w);
        } else if (pivot == 0) {
            pivot = w;
        } else {
            v0_gens.push_back(w ^ pivot);
        }
    }
    return {rad, span(f.spec(), v0_gens)};
}

// Witt-style ceiling on dim of any subspace where Q vanishes identically:
// floor((m + dim V0) / 2).
inline int max_singular_bound(const Field& f, const QuadForm& q) {
    return (f.m() + radical(f, q).second.dim()) / 2;
}

}  // namespace maxarc
