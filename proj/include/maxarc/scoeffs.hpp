#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "maxarc/field_linalg.hpp"
#include "maxarc/gf2m.hpp"
#include "maxarc/pqmaps.hpp"
#include "maxarc/subspaces.hpp"

namespace maxarc {

// Sparse canonical representative modulo x^(2^m) - x: exponents in
// [0, 2^m - 1], no stored zero coefficients.
struct ReducedPoly {
    FieldSpec fs;
    std::map<std::uint32_t, gf_elem> terms;

    friend bool operator==(const ReducedPoly&, const ReducedPoly&) = default;
};

// Nonzero exponents reduce into [1, 2^m - 1] cyclically: x^(2^m) = x, so
// e maps to e mod (2^m - 1) with residue 0 standing for 2^m - 1.
inline std::uint32_t reduce_exp(int m, std::uint64_t e) {
    if (e == 0) return 0;
    const std::uint64_t cyc = (std::uint64_t{1} << m) - 1;
    const std::uint64_t r = e % cyc;
    return static_cast<std::uint32_t>(r == 0 ? cyc : r);
}

inline void add_term(ReducedPoly& p, std::uint64_t e, gf_elem c) {
    if (c == 0) return;
    const std::uint32_t re = reduce_exp(p.fs.m, e);
    const auto it = p.terms.find(re);
    if (it == p.terms.end()) {
        p.terms.emplace(re, c);
    } else if ((it->second ^= c) == 0) {
        p.terms.erase(it);
    }
}

inline ReducedPoly poly_one(const FieldSpec& fs) { return ReducedPoly{fs, {{0, 1}}}; }

inline bool poly_is_zero(const ReducedPoly& p) { return p.terms.empty(); }

inline ReducedPoly poly_mul(const Field& f, const ReducedPoly& a, const ReducedPoly& b) {
    ReducedPoly r{a.fs, {}};
    for (const auto& [ea, ca] : a.terms)
        for (const auto& [eb, cb] : b.terms)
            add_term(r, std::uint64_t{ea} + eb, f.mul(ca, cb));
    return r;
}

inline ReducedPoly poly_add(const ReducedPoly& a, const ReducedPoly& b) {
    ReducedPoly r = a;
    for (const auto& [e, c] : b.terms) add_term(r, e, c);
    return r;
}

inline gf_elem poly_eval(const Field& f, const ReducedPoly& p, gf_elem x) {
    gf_elem acc = 0;
    for (const auto& [e, c] : p.terms) {
        if (e == 0) acc ^= c;  // x^0 = 1, also at x = 0
        else acc ^= f.mul(c, f.pow(x, e));
    }
    return acc;
}

// trace(mu x) = sum_j mu^(2^j) x^(2^j) as a reduced polynomial.
inline ReducedPoly trace_line_poly(const Field& f, gf_elem mu) {
    ReducedPoly p{f.spec(), {}};
    gf_elem c = mu;
    for (int j = 0; j < f.m(); ++j) {
        add_term(p, std::uint64_t{1} << j, c);
        c = f.sqr(c);
    }
    return p;
}

// S(x) = prod_i (1 + trace(mu_i x)) reduced mod x^(2^m) - x; the indicator
// polynomial of the subgroup cut out by the mus. Expansion is exponential in
// r, hence the size guards.
inline ReducedPoly s_poly(const Field& f, const DualRep& d) {
    if (d.r() > 6 || f.m() > 14) throw std::invalid_argument("s_poly: size limits exceeded (r <= 6, m <= 14)");
    if (d.fs != f.spec()) throw std::invalid_argument("s_poly: field mismatch");
    ReducedPoly s = poly_one(d.fs);
    for (gf_elem mu : d.mus) {
        ReducedPoly factor = trace_line_poly(f, mu);
        add_term(factor, 0, 1);
        s = poly_mul(f, s, factor);
    }
    return s;
}

// Strictly decreasing exponent indices i_1 > i_2 > ... > i_s in [0, m-1];
// keys the coefficient of x^(2^i1 + ... + 2^is).
struct IndexSet {
    std::vector<int> idx;

    explicit IndexSet(std::vector<int> indices) : idx(std::move(indices)) {
        if (idx.empty()) throw std::invalid_argument("IndexSet: at least one index required");
        for (std::size_t i = 0; i + 1 < idx.size(); ++i)
            if (idx[i] <= idx[i + 1]) throw std::invalid_argument("IndexSet: indices must strictly decrease");
        if (idx.back() < 0) throw std::invalid_argument("IndexSet: negative index");
    }

    int size() const { return static_cast<int>(idx.size()); }

    std::uint32_t exponent() const {
        std::uint32_t e = 0;
        for (int i : idx) e |= 1u << i;
        return e;
    }
};

inline gf_elem coeff_c(const ReducedPoly& s, const IndexSet& idx) {
    if (idx.idx.front() >= s.fs.m) throw std::invalid_argument("coeff_c: index out of range");
    const auto it = s.terms.find(idx.exponent());
    return it == s.terms.end() ? 0 : it->second;
}

// The matrix (v_{i_1}, ..., v_{i_r}) with v_i = (mu_1^(2^i), ..., mu_r^(2^i)):
// row j holds the shifts^(2^{shifts[j]}) powers of every mu.
struct MooreMatrix {
    FieldSpec fs;
    std::vector<gf_elem> mus;
    std::vector<int> shifts;
};

inline gf_elem moore_det(const Field& f, const MooreMatrix& mm) {
    if (mm.mus.size() != mm.shifts.size()) throw std::invalid_argument("moore_det: matrix not square");
    const std::size_t r = mm.mus.size();
    std::vector<std::vector<gf_elem>> a(r, std::vector<gf_elem>(r));
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) a[j][k] = f.frob(mm.mus[k], mm.shifts[j]);
    return field_det(f, a);
}

// Coefficient straight from the dual data: zero when s > r, a Moore
// determinant when s = r, and an S(x) expansion lookup below that.
inline gf_elem coeff_c(const Field& f, const DualRep& d, const IndexSet& idx) {
    if (idx.size() > d.r()) return 0;
    if (idx.size() == d.r()) return moore_det(f, MooreMatrix{d.fs, d.mus, idx.idx});
    return coeff_c(s_poly(f, d), idx);
}

namespace detail {

inline IndexSet descending_range(int hi, int lo) {  // hi, hi-1, ..., lo
    std::vector<int> v;
    for (int i = hi; i >= lo; --i) v.push_back(i);
    return IndexSet(v);
}

}  // namespace detail

// Solves the Moore system  (mu_t^(2^j))_{t,j} (b_0 .. b_{r-1})^T = (mu_t^(2^r))_t.
inline std::vector<gf_elem> moore_solve(const Field& f, const DualRep& d) {
    const int r = d.r();
    if (r < 1) throw std::invalid_argument("moore_solve: needs at least one mu");
    std::vector<std::vector<gf_elem>> a(r, std::vector<gf_elem>(r));
    std::vector<gf_elem> rhs(r);
    for (int t = 0; t < r; ++t) {
        for (int j = 0; j < r; ++j) a[t][j] = f.frob(d.mus[t], j);
        rhs[t] = f.frob(d.mus[t], r);
    }
    return field_solve(f, a, rhs);
}

// b_1 of the Moore system; by Cramer's rule it equals
// c(r, r-1, ..., 2, 0) / c(r-1, ..., 1, 0), and it also equals the
// expansion coefficient c(r-1, ..., 2, 1).
inline gf_elem cramer_b1(const Field& f, const DualRep& d) {
    if (d.r() < 2) throw std::invalid_argument("cramer_b1: needs r >= 2");
    return moore_solve(f, d)[1];
}

// c(r, r-1, ..., 2, 0) = c(r-1, ..., 1, 0) * c(r-1, ..., 2, 1), exactly.
inline bool coeff_factorization_check(const Field& f, const DualRep& d) {
    const int r = d.r();
    if (r < 2) throw std::invalid_argument("coeff_factorization_check: needs r >= 2");
    std::vector<int> lhs_idx;
    for (int i = r; i >= 2; --i) lhs_idx.push_back(i);
    lhs_idx.push_back(0);
    const gf_elem lhs = coeff_c(f, d, IndexSet(lhs_idx));
    const gf_elem f1 = coeff_c(f, d, detail::descending_range(r - 1, 0));
    const gf_elem f2 = coeff_c(f, d, detail::descending_range(r - 1, 1));
    return lhs == f.mul(f1, f2);
}

// Delta = c(m-1,...,m-r+1,m-r-1) c(m-2,...,m-r,0)
//       + c(m-2,...,m-r+1,m-r-1,0) c(m-1,...,m-r); nonzero for independent mus.
inline gf_elem delta(const Field& f, const DualRep& d) {
    const int m = f.m(), r = d.r();
    if (r < 1 || m < r + 2) throw std::invalid_argument("delta: needs r >= 1 and m >= r + 2");

    const auto coeff = [&](std::vector<int> idx) {
        if (static_cast<int>(idx.size()) > r) return gf_elem{0};
        return coeff_c(f, d, IndexSet(std::move(idx)));
    };
    std::vector<int> i1, i2, i3, i4;
    for (int i = m - 1; i >= m - r + 1; --i) i1.push_back(i);
    i1.push_back(m - r - 1);
    for (int i = m - 2; i >= m - r; --i) i2.push_back(i);
    i2.push_back(0);
    for (int i = m - 2; i >= m - r + 1; --i) i3.push_back(i);
    i3.push_back(m - r - 1);
    i3.push_back(0);
    for (int i = m - 1; i >= m - r; --i) i4.push_back(i);
    return f.mul(coeff(i1), coeff(i2)) ^ f.mul(coeff(i3), coeff(i4));
}

// T(x) = trace(p(x) q(x) + a0 b0) reduced mod x^(2^m) - x. The constant of
// p q cancels against a0 b0, so only cyclic shifts of the mixed exponents
// 2^s ((2^j - 1) + (2^k - 1)) survive.
inline ReducedPoly t_poly(const Field& f, const PqMap& map) {
    validate(map);
    const int d = map.d();
    std::map<std::uint32_t, gf_elem> prod;  // p(x) q(x) + a0 b0, degree < 2^m
    for (int j = 0; j < d; ++j) {
        if (map.a[j] == 0) continue;
        for (int k = 0; k < d; ++k) {
            if (map.b[k] == 0) continue;
            const std::uint32_t e = ((1u << j) - 1) + ((1u << k) - 1);
            if (e == 0) continue;  // the a0 b0 constant cancels
            auto [it, fresh] = prod.emplace(e, gf_elem{0});
            it->second ^= f.mul(map.a[j], map.b[k]);
        }
    }
    ReducedPoly t{map.fs, {}};
    for (const auto& [e, c] : prod) {
        if (c == 0) continue;
        gf_elem cc = c;
        for (int s = 0; s < f.m(); ++s) {
            add_term(t, std::uint64_t{e} << s, cc);
            cc = f.sqr(cc);
        }
    }
    return t;
}

// The product congruence selected by trace(a0 b0):
//   trace = 1:  T(x) S(x) == 0,
//   trace = 0:  (1 + T(x)) S(x) == x^(2^m - 1) + 1,
// each holding exactly when trace(p(lambda) q(lambda)) = 1 on A \ {0}.
inline bool product_congruence_check(const Field& f, const PqMap& map, const DualRep& d) {
    validate(map);
    if (subgroup_from_mus(f, d) != map.subgroup)
        throw std::invalid_argument("product_congruence_check: dual rep does not cut out the subgroup");
    const gf_elem a0b0 = map.d() > 0 ? f.mul(map.a[0], map.b[0]) : 0;
    const ReducedPoly t = t_poly(f, map);
    const ReducedPoly s = s_poly(f, d);
    if (f.trace(a0b0) == 1) return poly_is_zero(poly_mul(f, t, s));
    ReducedPoly one_plus_t = t;
    add_term(one_plus_t, 0, 1);
    ReducedPoly target{map.fs, {}};
    add_term(target, 0, 1);
    add_term(target, (std::uint64_t{1} << f.m()) - 1, 1);
    return poly_mul(f, one_plus_t, s) == target;
}

// Digit sum of a mod (2^m - 1), defined for arguments outside that ideal.
inline int digit_weight(std::uint64_t a, int m) {
    const std::uint64_t cyc = (std::uint64_t{1} << m) - 1;
    const std::uint64_t r = a % cyc;
    if (r == 0) throw std::domain_error("digit_weight: argument is divisible by 2^m - 1");
    return __builtin_popcountll(r);
}

// w(a) + w(b) - w(a+b): the number of carries in the modular addition.
inline int carry_count(std::uint64_t a, std::uint64_t b, int m) {
    return digit_weight(a, m) + digit_weight(b, m) - digit_weight(a + b, m);
}

}  // namespace maxarc
