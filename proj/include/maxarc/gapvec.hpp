#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxarc/f2.hpp"
#include "maxarc/field_linalg.hpp"
#include "maxarc/gf2m.hpp"
#include "maxarc/scoeffs.hpp"

namespace maxarc {

// Binary index-selection vector; bit j selects the Frobenius shift v_j.
// Outputs of the gap-vector procedures start with a 1 (index 0 selected)
// and bound their runs of consecutive ones by t - 1.
struct GapVector {
    std::vector<std::uint8_t> bits;

    std::vector<int> indices() const {
        std::vector<int> idx;
        for (std::size_t j = 0; j < bits.size(); ++j)
            if (bits[j]) idx.push_back(static_cast<int>(j));
        return idx;
    }

    friend bool operator==(const GapVector&, const GapVector&) = default;
};

inline int consecutive_run_max(const GapVector& w) {
    int best = 0, run = 0;
    for (std::uint8_t b : w.bits) {
        run = b ? run + 1 : 0;
        best = std::max(best, run);
    }
    return best;
}

// The vectors v_i = (mu_1^(2^i), ..., mu_r^(2^i)) in GF(2^m)^r for
// i = 0..m-1, with indices read modulo m (v_m = v_0). Any r consecutive
// vectors are independent exactly when the mus are F2-independent.
struct SpanState {
    Field field;
    std::vector<gf_elem> mus;
    std::vector<std::vector<gf_elem>> vecs;  // vecs[i][k] = mu_k^(2^i)

    int r() const { return static_cast<int>(mus.size()); }
    int m() const { return field.m(); }

    const std::vector<gf_elem>& v(int i) const {
        i %= m();
        if (i < 0) i += m();
        return vecs[static_cast<std::size_t>(i)];
    }
};

inline SpanState make_span_state(const Field& f, const std::vector<gf_elem>& mus) {
    if (mus.empty() || static_cast<int>(mus.size()) > f.m())
        throw std::invalid_argument("make_span_state: need 1 <= r <= m mus");
    if (f2::rank(mus) != static_cast<int>(mus.size()))
        throw std::invalid_argument("make_span_state: mus must be F2-independent");
    SpanState st{f, mus, {}};
    st.vecs.assign(static_cast<std::size_t>(f.m()), std::vector<gf_elem>(mus.size()));
    for (std::size_t k = 0; k < mus.size(); ++k) {
        gf_elem v = mus[k];
        for (int i = 0; i < f.m(); ++i) {
            st.vecs[static_cast<std::size_t>(i)][k] = v;
            v = f.sqr(v);
        }
    }
    return st;
}

// Rank over GF(2^m) of { v_j : w_j = 1 }; indices wrap modulo m.
inline int lambda_dim(const SpanState& st, const GapVector& w) {
    FieldSpanBasis basis(st.field);
    for (std::size_t j = 0; j < w.bits.size(); ++j)
        if (w.bits[j]) basis.insert(st.v(static_cast<int>(j)));
    return basis.dim();
}

inline int lambda_dim(const SpanState& st, const std::vector<int>& indices) {
    FieldSpanBasis basis(st.field);
    for (int j : indices) basis.insert(st.v(j));
    return basis.dim();
}

// All three conditions on an exact index set: i_1 = 0, i_r <= m - (t+3),
// runs of consecutive integers bounded by t - 1, and nonzero Moore
// determinant of the selected shifts.
inline bool gap_vector_valid(const SpanState& st, int t, const GapVector& w) {
    const std::vector<int> idx = w.indices();
    if (static_cast<int>(idx.size()) != st.r()) return false;
    if (idx.empty() || idx.front() != 0) return false;
    if (idx.back() > st.m() - (t + 3)) return false;
    if (consecutive_run_max(w) > t - 1) return false;
    return moore_det(st.field, MooreMatrix{st.field.spec(), st.mus, idx}) != 0;
}

// Lexicographically smallest valid index set, or nothing. Enumeration
// prunes on the run bound; the rank predicate is evaluated last.
inline std::optional<GapVector> gap_vector_bruteforce(const SpanState& st, int t,
                                                      std::uint64_t candidate_cap = 100000000) {
    const int r = st.r(), m = st.m();
    if (t < 3 || t > r) throw std::invalid_argument("gap_vector_bruteforce: needs 3 <= t <= r");
    const int hi = m - (t + 3);
    if (hi < 0 || r - 1 > hi) return std::nullopt;

    long double count = 1;  // C(hi, r-1) candidate sets
    for (int i = 0; i < r - 1; ++i) count = count * (hi - i) / (i + 1);
    if (count > static_cast<long double>(candidate_cap))
        throw std::invalid_argument("gap_vector_bruteforce: candidate space exceeds cap");

    std::vector<int> idx{0};
    const auto tail_run_ok = [&]() {
        int run = 1;
        for (std::size_t i = idx.size() - 1; i > 0 && idx[i] == idx[i - 1] + 1; --i) ++run;
        return run <= t - 1;
    };
    std::optional<GapVector> found;
    const auto rec = [&](auto&& self) -> bool {
        if (static_cast<int>(idx.size()) == r) {
            if (lambda_dim(st, idx) != r) return false;
            GapVector w;
            w.bits.assign(static_cast<std::size_t>(idx.back()) + 1, 0);
            for (int i : idx) w.bits[static_cast<std::size_t>(i)] = 1;
            found = std::move(w);
            return true;
        }
        const int remaining = r - static_cast<int>(idx.size());
        for (int nxt = idx.back() + 1; nxt <= hi - (remaining - 1); ++nxt) {
            idx.push_back(nxt);
            if (tail_run_ok() && self(self)) return true;
            idx.pop_back();
        }
        return false;
    };
    rec(rec);
    return found;
}

struct ConstructiveGap {
    GapVector w;
    std::string branch;  // which branch of the case analysis produced w
};

namespace gapdetail {

using Bits = std::vector<std::uint8_t>;

inline Bits operator*(const Bits& a, const Bits& b) {
    Bits out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

inline Bits repeat(const Bits& a, int times) {
    Bits out;
    for (int i = 0; i < times; ++i) out.insert(out.end(), a.begin(), a.end());
    return out;
}

inline Bits ones(int n) { return Bits(static_cast<std::size_t>(n), 1); }
inline Bits zeros(int n) { return Bits(static_cast<std::size_t>(n), 0); }

// Leading zeros shift every selected index down (a global Frobenius shift,
// rank-preserving); trailing zeros only pad the length.
inline GapVector trimmed(Bits bits) {
    std::size_t lead = 0;
    while (lead < bits.size() && !bits[lead]) ++lead;
    bits.erase(bits.begin(), bits.begin() + static_cast<std::ptrdiff_t>(lead));
    while (!bits.empty() && !bits.back()) bits.pop_back();
    if (bits.empty()) throw std::logic_error("gap vector construction produced an empty vector");
    return GapVector{std::move(bits)};
}

inline FieldSpanBasis span_of(const SpanState& st, const Bits& bits) {
    FieldSpanBasis basis(st.field);
    for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) basis.insert(st.v(static_cast<int>(j)));
    return basis;
}

// Spanning form of the statement: selected shifts span GF(2^m)^r, length at
// most m - (t+2), runs at most t - 1, first bit set.
inline bool spanning_valid(const SpanState& st, int t, const GapVector& w) {
    if (w.bits.empty() || !w.bits.front() || !w.bits.back()) return false;
    if (static_cast<int>(w.bits.size()) > st.m() - (t + 2)) return false;
    if (consecutive_run_max(w) > t - 1) return false;
    return lambda_dim(st, w) == st.r();
}

// Expresses target as a combination of the given vectors (known consistent)
// and returns the coefficients; zero where a column carries no pivot.
inline std::vector<gf_elem> express_in(const Field& f, const std::vector<const std::vector<gf_elem>*>& cols,
                                       const std::vector<gf_elem>& target) {
    const std::size_t rows = target.size(), n = cols.size();
    std::vector<std::vector<gf_elem>> sys(rows, std::vector<gf_elem>(n + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < n; ++j) sys[i][j] = (*cols[j])[i];
        sys[i][n] = target[i];
    }
    std::vector<int> pivot_of_col(n, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && sys[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(sys[piv], sys[row]);
        const gf_elem ip = f.inv(sys[row][col]);
        for (auto& c : sys[row]) c = f.mul(ip, c);
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == row || sys[rr][col] == 0) continue;
            const gf_elem factor = sys[rr][col];
            for (std::size_t cc = col; cc <= n; ++cc) sys[rr][cc] ^= f.mul(factor, sys[row][cc]);
        }
        pivot_of_col[col] = static_cast<int>(row);
        ++row;
    }
    for (std::size_t rr = row; rr < rows; ++rr)
        if (sys[rr][n] != 0) throw std::logic_error("express_in: inconsistent system");
    std::vector<gf_elem> coeff(n, 0);
    for (std::size_t col = 0; col < n; ++col)
        if (pivot_of_col[col] >= 0) coeff[col] = sys[static_cast<std::size_t>(pivot_of_col[col])][n];
    return coeff;
}

// Core construction at full rank r = floor((m-3)/2). Returns a spanning
// vector; the exact r-index set is extracted by the caller.
inline ConstructiveGap constructive_core(const SpanState& st, int t) {
    const int r = st.r(), m = st.m();
    const int k = r / t, a = r % t;
    if (k < 1) throw std::logic_error("constructive_core: r < t");

    const Bits u = zeros(1) * ones(t - 1);     // (0, 1, ..., 1)
    const Bits ubar = ones(1) * zeros(t - 1);  // (1, 0, ..., 0)
    const Bits prefix = ones(a);
    const Bits base = prefix * repeat(u, k);   // length r, k zeros

    // Walk the nested sequence until it either reaches the full span
    // (step b <= k) or stalls; the last growth happened at step b.
    FieldSpanBasis basis = span_of(st, base);
    if (basis.dim() != r - k) throw std::logic_error("constructive_core: base dimension is not r - k");
    std::vector<int> dims{basis.dim()};
    int reached_full = -1, stalled_after = -1;
    for (int i = 1; i <= k + 1; ++i) {
        const int base_len = r + (i - 1) * t;
        for (int j = 1; j <= t - 1; ++j) basis.insert(st.v(base_len + j));
        dims.push_back(basis.dim());
        if (dims[static_cast<std::size_t>(i)] == dims[static_cast<std::size_t>(i - 1)]) {
            stalled_after = i - 1;
            break;
        }
        if (dims[static_cast<std::size_t>(i)] == r) {
            reached_full = i;
            break;
        }
    }

    Bits out;
    std::string branch;
    if (reached_full >= 1) {
        const int b = reached_full;
        if (b > k) throw std::logic_error("constructive_core: full span reached too late");
        if (b < k) {
            out = prefix * repeat(u, k + b);
            branch = "full-span.early";
        } else {
            // Every step grew by exactly one; locate the first fresh shift.
            FieldSpanBasis lam = span_of(st, base);
            int j = -1;
            for (int cand = 1; cand <= t - 1; ++cand) {
                if (!lam.contains(st.v(r + cand))) {
                    j = cand;
                    break;
                }
            }
            if (j < 0) throw std::logic_error("constructive_core: no fresh shift in the first appended block");
            if (j <= a) {
                out = prefix * repeat(u, 2 * k - 1) * (zeros(j) * ones(1));
                branch = "full-span.late.small-j";
            } else {
                out = (zeros(j) * ones(t + a - j)) * repeat(u, 2 * k - 2) * (zeros(1) * ones(j));
                branch = "full-span.late.large-j";
            }
        }
    } else if (stalled_after >= 0) {
        const int b = stalled_after;
        const int dim_b = dims[static_cast<std::size_t>(b)];
        if (dim_b > r - k + b) {
            if (k - b - 1 < 1)
                throw std::logic_error("constructive_core: stalled strictly above minimum at the last block");
            out = prefix * repeat(u, k + b) * zeros(t) * repeat(ubar, k - b - 1);
            branch = "stalled.above-min";
        } else if (b > 0) {
            // The (k+b)-th block added exactly one new shift; name it.
            FieldSpanBasis lam = span_of(st, prefix * repeat(u, k + b - 1));
            int i0 = -1;
            for (int cand = 1; cand <= t - 1; ++cand) {
                if (!lam.contains(st.v(r + (b - 1) * t + cand))) {
                    i0 = cand;
                    break;
                }
            }
            if (i0 < 0) throw std::logic_error("constructive_core: no fresh shift at the single-growth step");
            const Bits unit = zeros(i0) * ones(1) * zeros(t - 1 - i0);
            out = prefix * repeat(u, k + b - 1) * unit * repeat(ubar, k - b);
            branch = "stalled.single-step";
        } else {
            // Immediate stall: the selected shifts are t-periodic, forcing t | m.
            if (m % t != 0) throw std::logic_error("constructive_core: immediate stall without t | m");
            if (a >= 1) {
                out = ones(1) * prefix * repeat(u, k - 1) * (zeros(1) * ones(t - 2) * zeros(1)) *
                      repeat(ubar, k - 1) * ones(1);
                branch = "stalled.immediate.a>=1";
            } else {
                if (t != 3 && t != 4)
                    throw std::logic_error("constructive_core: immediate stall with a = 0 and t not in {3,4}");
                // Write v_{r+1} over the shifts selected by u^k; coefficients at
                // block residues t-1 (and t-2 when t = 4) must vanish, and the
                // top surviving residue-1 block drives the final pattern.
                std::vector<const std::vector<gf_elem>*> cols;
                std::vector<int> sel;
                for (int j = 0; j < r; ++j) {
                    if (j % t != 0) {
                        sel.push_back(j);
                        cols.push_back(&st.v(j));
                    }
                }
                const std::vector<gf_elem> coeff = express_in(st.field, cols, st.v(r + 1));
                int h = -1;
                for (std::size_t cidx = 0; cidx < sel.size(); ++cidx) {
                    if (coeff[cidx] == 0) continue;
                    const int residue = sel[cidx] % t;
                    if (residue == t - 1 || (t == 4 && residue == t - 2))
                        throw std::logic_error("constructive_core: forbidden residue carries a nonzero coefficient");
                    if (residue == 1) h = std::max(h, sel[cidx] / t);
                }
                if (h < 0) throw std::logic_error("constructive_core: v_{r+1} has no residue-1 component");
                if (h != k - 1) {
                    const Bits mid = (t == 3) ? Bits{0, 0, 1} : Bits{0, 0, 1, 1};
                    const Bits cap = (t == 3) ? Bits{1, 1, 0} : Bits{1, 1, 0, 0};
                    out = repeat(u, k - 1) * mid * repeat(ubar, k - h - 1) * cap * repeat(ubar, h);
                    branch = "stalled.immediate.a=0.h<top";
                } else {
                    const Bits mid = (t == 3) ? Bits{0, 1, 0} : Bits{0, 1, 0, 1};
                    const Bits cap = (t == 3) ? Bits{1, 0, 1} : Bits{1, 0, 1, 0};
                    out = repeat(u, k - 1) * mid * cap * repeat(ubar, k - 1);
                    branch = "stalled.immediate.a=0.h=top";
                }
            }
        }
    } else {
        throw std::logic_error("constructive_core: nested sequence neither filled nor stalled");
    }

    ConstructiveGap res{trimmed(std::move(out)), branch};
    if (!spanning_valid(st, t, res.w))
        throw std::logic_error("constructive_core: branch '" + res.branch + "' produced an invalid vector");
    return res;
}

}  // namespace gapdetail

// Dimension trajectory of the nested spans Lambda(prefix * u^(k+i)) for
// i = 0..steps-1, where prefix is a ones, u = (0, 1^(t-1)) and r = k t + a.
// Entries never decrease, grow by at most t - 1 per step, and once two
// consecutive entries agree the tail stays constant.
inline std::vector<int> nested_sequence_probe(const SpanState& st, int t, int k, int a, int steps = -1) {
    using namespace gapdetail;
    const int r = st.r();
    if (t < 2 || k < 1 || a < 0 || a > t - 1 || k * t + a != r)
        throw std::invalid_argument("nested_sequence_probe: need r = k t + a with 0 <= a < t");
    if (steps < 0) steps = k + 3;
    const Bits u = zeros(1) * ones(t - 1);
    FieldSpanBasis basis = span_of(st, ones(a) * repeat(u, k));
    std::vector<int> dims{basis.dim()};
    for (int i = 1; i < steps; ++i) {
        const int base_len = r + (i - 1) * t;
        for (int j = 1; j <= t - 1; ++j) basis.insert(st.v(base_len + j));
        dims.push_back(basis.dim());
    }
    return dims;
}

// Constructive existence procedure for m >= 10 and 3 <= t <= r <=
// floor((m-3)/2): builds a spanning vector by the case analysis over the
// nested sequence, then extracts r independent selected shifts. Smaller r
// reduces to full rank by extending the mus and projecting back.
inline ConstructiveGap gap_vector_constructive(const SpanState& st, int t) {
    const int r = st.r(), m = st.m();
    if (m == 9) throw std::invalid_argument("gap_vector_constructive: m = 9 is excluded");
    if (m < 10) throw std::invalid_argument("gap_vector_constructive: needs m >= 10");
    const int cap = (m - 3) / 2;
    if (t < 3 || t > r || r > cap)
        throw std::invalid_argument("gap_vector_constructive: needs 3 <= t <= r <= floor((m-3)/2)");

    ConstructiveGap spanning;
    if (r == cap) {
        spanning = gapdetail::constructive_core(st, t);
    } else {
        std::vector<gf_elem> ext = st.mus;
        std::vector<std::uint32_t> bas = f2::rref(ext);
        for (gf_elem cand = 1; static_cast<int>(ext.size()) < cap && cand < st.field.order(); ++cand)
            if (f2::basis_insert(bas, cand)) ext.push_back(cand);
        if (static_cast<int>(ext.size()) != cap)
            throw std::logic_error("gap_vector_constructive: could not extend the mus");
        spanning = gapdetail::constructive_core(make_span_state(st.field, ext), t);
        spanning.branch += "+projected";
    }

    // Greedy extraction of r independent shifts, then slide to index 0.
    FieldSpanBasis picked(st.field);
    std::vector<int> kept;
    for (int j : spanning.w.indices()) {
        if (picked.insert(st.v(j))) kept.push_back(j);
        if (static_cast<int>(kept.size()) == r) break;
    }
    if (static_cast<int>(kept.size()) != r)
        throw std::logic_error("gap_vector_constructive: extraction lost rank");
    const int base = kept.front();
    GapVector w;
    w.bits.assign(static_cast<std::size_t>(kept.back() - base) + 1, 0);
    for (int j : kept) w.bits[static_cast<std::size_t>(j - base)] = 1;
    if (!gap_vector_valid(st, t, w))
        throw std::logic_error("gap_vector_constructive: extracted vector failed validation");
    return ConstructiveGap{std::move(w), spanning.branch};
}

}  // namespace maxarc
