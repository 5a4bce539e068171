#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "maxarc/field_linalg.hpp"
#include "maxarc/geometry.hpp"
#include "maxarc/gf2m.hpp"
#include "maxarc/subspaces.hpp"

namespace maxarc {

// Coefficient data for p(x) = sum_i a[i] x^(2^i - 1) and q(x) likewise, tied
// to an additive subgroup of matching dimension. The q = 1 maps are encoded
// as b = (1, 0, ..., 0). Coefficient vectors of length d are canonical: a
// linearized polynomial of degree < 2^d is determined by its values on A.
struct PqMap {
    FieldSpec fs;
    std::vector<gf_elem> a, b;
    Subspace subgroup;

    int d() const { return static_cast<int>(a.size()); }
};

inline void validate(const PqMap& map) {
    if (map.a.size() != map.b.size() || map.d() != map.subgroup.dim() || map.fs != map.subgroup.fs)
        throw std::invalid_argument("PqMap: inconsistent dimensions");
}

inline PqMap p1_map(const FieldSpec& fs, std::vector<gf_elem> a, Subspace subgroup) {
    std::vector<gf_elem> b(a.size(), 0);
    if (!b.empty()) b[0] = 1;
    PqMap map{fs, std::move(a), std::move(b), std::move(subgroup)};
    validate(map);
    return map;
}

// An F2-linear map as a polynomial with 2-power exponents only:
// L(x) = sum_i c[i] x^(2^i). Trailing zero coefficients are trimmed.
struct LinearizedPoly {
    FieldSpec fs;
    std::vector<gf_elem> c;
};

inline void lin_trim(LinearizedPoly& L) {
    while (!L.c.empty() && L.c.back() == 0) L.c.pop_back();
}

inline gf_elem lin_eval(const Field& f, const LinearizedPoly& L, gf_elem x) {
    gf_elem acc = 0, p = x;
    for (std::size_t i = 0; i < L.c.size(); ++i) {
        if (L.c[i] != 0) acc ^= f.mul(L.c[i], p);
        p = f.sqr(p);
    }
    return acc;
}

// sum_i coeffs[i] * lambda^(2^i - 1); the i = 0 term contributes coeffs[0]
// even at lambda = 0.
inline gf_elem eval_map_poly(const Field& f, const std::vector<gf_elem>& coeffs, gf_elem lambda) {
    if (coeffs.empty()) return 0;
    if (lambda == 0) return coeffs[0];
    gf_elem acc = coeffs[0];
    gf_elem pw = 1;  // lambda^(2^i - 1), maintained by pw <- pw^2 * lambda
    for (std::size_t i = 1; i < coeffs.size(); ++i) {
        pw = f.mul(f.sqr(pw), lambda);
        if (coeffs[i] != 0) acc ^= f.mul(coeffs[i], pw);
    }
    return acc;
}

inline gf_elem eval_p(const Field& f, const PqMap& map, gf_elem lambda) {
    return eval_map_poly(f, map.a, lambda);
}

inline gf_elem eval_q(const Field& f, const PqMap& map, gf_elem lambda) {
    return eval_map_poly(f, map.b, lambda);
}

// x * p(x) as a linearized polynomial with the same coefficients.
inline LinearizedPoly linearization(const FieldSpec& fs, const std::vector<gf_elem>& coeffs) {
    LinearizedPoly L{fs, coeffs};
    lin_trim(L);
    return L;
}

struct TraceCheck {
    bool ok = true;
    std::optional<gf_elem> witness;  // first failing lambda in member order
};

// trace(p(lambda) q(lambda)) = 1 for every nonzero lambda of the subgroup.
inline TraceCheck check_trace_condition(const Field& f, const PqMap& map,
                                        std::vector<gf_elem>* scratch = nullptr) {
    validate(map);
    std::vector<gf_elem> local;
    std::vector<gf_elem>& mem = scratch ? *scratch : local;
    members_into(map.subgroup, mem);
    for (std::size_t i = 1; i < mem.size(); ++i) {
        const gf_elem lambda = mem[i];
        if (f.trace(f.mul(eval_p(f, map, lambda), eval_q(f, map, lambda))) != 1)
            return TraceCheck{false, lambda};
    }
    return TraceCheck{};
}

struct trace_condition_error : std::runtime_error {
    explicit trace_condition_error(gf_elem w)
        : std::runtime_error("trace condition fails at lambda = " + hex_str(w)), witness(w) {}
    gf_elem witness;
};

// { F_{p(lambda), q(lambda), lambda} : lambda in A \ {0} }; a closed set of
// 2^d - 1 nondegenerate conics whenever the trace condition holds.
inline std::vector<Conic> closed_set_from_pq(const Field& f, const PqMap& map) {
    const TraceCheck tc = check_trace_condition(f, map);
    if (!tc.ok) throw trace_condition_error(*tc.witness);
    std::vector<Conic> cs;
    for (gf_elem lambda : members(map.subgroup)) {
        if (lambda == 0) continue;
        cs.push_back(Conic{eval_p(f, map, lambda), eval_q(f, map, lambda), lambda});
    }
    std::sort(cs.begin(), cs.end());
    return cs;
}

// Recovers the subgroup and the canonical degree-< 2^d coefficient vectors
// from a closed set: lambda * alpha(lambda) and lambda * beta(lambda) are
// F2-linear on A, so a Moore-matrix solve on a basis of A interpolates them.
inline PqMap pq_from_closed_set(const Field& f, const std::vector<Conic>& cs) {
    std::map<gf_elem, std::pair<gf_elem, gf_elem>> by_lambda;
    std::vector<gf_elem> lambdas;
    for (const Conic& c : cs) {
        require_nondegenerate(f, c);
        if (!by_lambda.emplace(*c.lambda, std::make_pair(c.alpha, c.beta)).second)
            throw std::invalid_argument("pq_from_closed_set: duplicate lambda");
        lambdas.push_back(*c.lambda);
    }
    const Subspace A = span(f.spec(), lambdas);
    if ((std::size_t{1} << A.dim()) != cs.size() + 1)
        throw std::invalid_argument("pq_from_closed_set: lambdas do not fill a subgroup");

    const int d = A.dim();
    std::vector<std::vector<gf_elem>> moore(d, std::vector<gf_elem>(d));
    std::vector<gf_elem> rhs_a(d), rhs_b(d);
    for (int j = 0; j < d; ++j) {
        const gf_elem e = A.basis[j];
        for (int i = 0; i < d; ++i) moore[j][i] = f.frob(e, i);
        const auto& [alpha, beta] = by_lambda.at(e);
        rhs_a[j] = f.mul(e, alpha);
        rhs_b[j] = f.mul(e, beta);
    }
    PqMap map{f.spec(),
              d ? field_solve(f, moore, rhs_a) : std::vector<gf_elem>{},
              d ? field_solve(f, moore, rhs_b) : std::vector<gf_elem>{}, A};
    for (const auto& [lambda, ab] : by_lambda) {
        if (eval_p(f, map, lambda) != ab.first || eval_q(f, map, lambda) != ab.second)
            throw std::invalid_argument("pq_from_closed_set: values are not linear on the subgroup");
    }
    return map;
}

// Monic linearized polynomial of degree 2^dim whose root set is exactly A,
// built by the tower step L' = L^2 + L(g) L.
inline LinearizedPoly subspace_polynomial(const Field& f, const Subspace& A) {
    if (A.dim() > 16) throw std::invalid_argument("subspace_polynomial: dimension too large");
    LinearizedPoly L{A.fs, {1}};  // the polynomial x
    for (gf_elem g : A.basis) {
        const gf_elem lg = lin_eval(f, L, g);
        std::vector<gf_elem> next(L.c.size() + 1, 0);
        for (std::size_t i = 0; i < L.c.size(); ++i) {
            next[i + 1] ^= f.sqr(L.c[i]);
            next[i] ^= f.mul(lg, L.c[i]);
        }
        L.c = std::move(next);
    }
    return L;
}

// Division in the composition ring of linearized polynomials: repeatedly
// eliminates the leading 2-power term by the monic subspace polynomial of A.
// The remainder has degree < 2^dim(A) and agrees with L on every member.
inline LinearizedPoly reduce_mod_subspace(const Field& f, const LinearizedPoly& L, const Subspace& A) {
    const LinearizedPoly P = subspace_polynomial(f, A);
    const std::size_t d = P.c.size() - 1;  // P has degree 2^d
    LinearizedPoly R = L;
    lin_trim(R);
    while (R.c.size() > d) {
        const std::size_t k = R.c.size() - 1;
        const gf_elem c = R.c[k];
        if (c != 0) {
            const int shift = static_cast<int>(k - d);
            for (std::size_t i = 0; i <= d; ++i)
                R.c[i + shift] ^= f.mul(c, f.frob(P.c[i], shift));
        }
        R.c.pop_back();
        lin_trim(R);
    }
    return R;
}

// After reduction the coefficient lists are canonical, so the generated arc
// is Denniston exactly when every index >= 2 coefficient vanishes.
inline bool is_denniston_form(const PqMap& map) {
    for (std::size_t i = 2; i < map.a.size(); ++i)
        if (map.a[i] != 0 || map.b[i] != 0) return false;
    return true;
}

}  // namespace maxarc
