#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "maxarc/gf2m.hpp"
#include "maxarc/subspaces.hpp"

namespace maxarc {

// Right-normalized homogeneous coordinates: the last nonzero coordinate is 1.
struct ProjPoint {
    gf_elem x = 0, y = 0, z = 0;

    auto operator<=>(const ProjPoint&) const = default;
};

struct ProjLine {
    gf_elem a = 0, b = 0, c = 0;  // incidence a*x + b*y + c*z = 0

    auto operator<=>(const ProjLine&) const = default;
};

inline ProjPoint normalize_point(const Field& f, gf_elem x, gf_elem y, gf_elem z) {
    if (z != 0) {
        const gf_elem iz = f.inv(z);
        return ProjPoint{f.mul(x, iz), f.mul(y, iz), 1};
    }
    if (y != 0) {
        return ProjPoint{f.mul(x, f.inv(y)), 1, 0};
    }
    if (x != 0) return ProjPoint{1, 0, 0};
    throw std::invalid_argument("normalize_point: zero coordinates");
}

// Conic of the family F_{alpha,beta,lambda}: alpha x^2 + x y + beta y^2 +
// lambda z^2 = 0. A missing lambda is the line at infinity; lambda = 0 is
// the nucleus (0,0,1) alone. Nondegenerate members need trace(alpha*beta)=1.
struct Conic {
    gf_elem alpha = 0, beta = 0;
    std::optional<gf_elem> lambda;  // nullopt encodes the infinite member

    friend bool operator==(const Conic&, const Conic&) = default;
    friend bool operator<(const Conic& l, const Conic& r) {
        const std::uint64_t ll = l.lambda ? *l.lambda : ~std::uint64_t{0};
        const std::uint64_t rl = r.lambda ? *r.lambda : ~std::uint64_t{0};
        return std::tie(ll, l.alpha, l.beta) < std::tie(rl, r.alpha, r.beta);
    }
};

struct Arc {
    FieldSpec fs;
    std::vector<ProjPoint> points;  // sorted, no duplicates
    std::uint32_t degree_claim = 0;
};

inline void require_nondegenerate(const Field& f, const Conic& c) {
    if (!c.lambda) throw std::invalid_argument("conic: infinite member not allowed here");
    if (*c.lambda == 0) throw std::invalid_argument("conic: lambda = 0 is the nucleus");
    if (c.alpha == 0 || c.beta == 0 || f.trace(f.mul(c.alpha, c.beta)) != 1)
        throw std::invalid_argument("conic: alpha x^2 + x + beta must be irreducible");
}

// All q+1 points of a nondegenerate conic, found by scanning (x,y) pairs.
// Irreducibility forbids solutions on z = 0, so every point has z = 1.
inline std::vector<ProjPoint> conic_points(const Field& f, const Conic& c) {
    require_nondegenerate(f, c);
    const std::uint32_t q = static_cast<std::uint32_t>(f.order());
    std::vector<gf_elem> ax2(q), by2(q);
    for (std::uint32_t v = 0; v < q; ++v) {
        ax2[v] = f.mul(c.alpha, f.sqr(v));
        by2[v] = f.mul(c.beta, f.sqr(v));
    }
    std::vector<ProjPoint> pts;
    pts.reserve(q + 1);
    for (std::uint32_t x = 0; x < q; ++x) {
        const gf_elem lhs = ax2[x] ^ *c.lambda;
        for (std::uint32_t y = 0; y < q; ++y) {
            if ((lhs ^ f.mul(x, y) ^ by2[y]) == 0) pts.push_back(ProjPoint{x, y, 1});
        }
    }
    if (pts.size() != q + 1) throw std::logic_error("conic_points: point count is not q + 1");
    return pts;
}

// The composition on conics with distinct finite nonzero lambdas:
// index-wise weighted average on alpha and beta, plain sum on lambda.
inline Conic compose(const Field& f, const Conic& c1, const Conic& c2) {
    require_nondegenerate(f, c1);
    require_nondegenerate(f, c2);
    const gf_elem l1 = *c1.lambda, l2 = *c2.lambda;
    if (l1 == l2) throw std::invalid_argument("compose: lambdas must differ");
    const gf_elem denom_inv = f.inv(l1 ^ l2);
    const gf_elem alpha = f.mul(f.mul(c1.alpha, l1) ^ f.mul(c2.alpha, l2), denom_inv);
    const gf_elem beta = f.mul(f.mul(c1.beta, l1) ^ f.mul(c2.beta, l2), denom_inv);
    return Conic{alpha, beta, l1 ^ l2};
}

// True iff every pairwise composition stays inside the set. A closed set
// necessarily has 2^d - 1 members; that consequence is asserted.
inline bool is_closed(const Field& f, const std::vector<Conic>& cs) {
    std::vector<Conic> sorted = cs;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        require_nondegenerate(f, sorted[i]);
        if (sorted[i].lambda == sorted[i + 1].lambda)
            throw std::invalid_argument("is_closed: duplicate lambda");
    }
    if (!sorted.empty()) require_nondegenerate(f, sorted.back());

    for (std::size_t i = 0; i < sorted.size(); ++i) {
        for (std::size_t j = i + 1; j < sorted.size(); ++j) {
            const Conic comp = compose(f, sorted[i], sorted[j]);
            if (!std::binary_search(sorted.begin(), sorted.end(), comp)) return false;
        }
    }
    const std::size_t n = sorted.size() + 1;
    if ((n & (n - 1)) != 0) throw std::logic_error("is_closed: closed set size is not 2^d - 1");
    return true;
}

// Union of the conics of a closed set plus the common nucleus (0,0,1);
// a maximal (2^(m+d) - 2^m + 2^d, 2^d)-arc.
inline Arc build_arc(const Field& f, const std::vector<Conic>& cs) {
    if (!is_closed(f, cs)) throw std::invalid_argument("build_arc: set is not closed");
    std::vector<ProjPoint> pts;
    pts.push_back(ProjPoint{0, 0, 1});
    for (const Conic& c : cs) {
        const std::vector<ProjPoint> cp = conic_points(f, c);
        pts.insert(pts.end(), cp.begin(), cp.end());
    }
    std::sort(pts.begin(), pts.end());
    const std::size_t before = pts.size();
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() != before) throw std::logic_error("build_arc: conics are not disjoint");

    int d = 0;
    while ((std::size_t{1} << d) < cs.size() + 1) ++d;
    const std::uint64_t expect = (f.order() << d) - f.order() + (std::uint64_t{1} << d);
    if (pts.size() != expect) throw std::logic_error("build_arc: arc size mismatch");
    return Arc{f.spec(), std::move(pts), static_cast<std::uint32_t>(1u << d)};
}

// Denniston point set { (x,y,1) : a x^2 + h x y + b y^2 in A } for an
// irreducible quadratic form, i.e. trace(a*b / h^2) = 1.
inline Arc denniston_arc(const Field& f, gf_elem a, gf_elem h, gf_elem b, const Subspace& A) {
    if (h == 0) throw std::invalid_argument("denniston_arc: h must be nonzero");
    const gf_elem hinv2 = f.inv(f.sqr(h));
    if (f.trace(f.mul(f.mul(a, b), hinv2)) != 1)
        throw std::invalid_argument("denniston_arc: quadratic form is reducible");
    if (A.fs != f.spec()) throw std::invalid_argument("denniston_arc: field mismatch");

    const std::uint32_t q = static_cast<std::uint32_t>(f.order());
    std::vector<gf_elem> ax2(q), by2(q);
    for (std::uint32_t v = 0; v < q; ++v) {
        ax2[v] = f.mul(a, f.sqr(v));
        by2[v] = f.mul(b, f.sqr(v));
    }
    std::vector<ProjPoint> pts;
    for (std::uint32_t x = 0; x < q; ++x) {
        for (std::uint32_t y = 0; y < q; ++y) {
            const gf_elem qv = ax2[x] ^ f.mul(h, f.mul(x, y)) ^ by2[y];
            if (contains(A, qv)) pts.push_back(ProjPoint{x, y, 1});
        }
    }
    std::sort(pts.begin(), pts.end());
    return Arc{f.spec(), std::move(pts), static_cast<std::uint32_t>(1u << A.dim())};
}

struct VerifyReport {
    bool is_max = false;
    std::uint64_t degree = 0;                          // n with line support {0, n}
    std::map<std::uint64_t, std::uint64_t> histogram;  // intersection size -> line count
};

namespace detail {

// Appends the q+1 normalized lines through p to `out`.
inline void lines_through(const Field& f, const ProjPoint& p, std::vector<ProjLine>& out) {
    const std::uint32_t q = static_cast<std::uint32_t>(f.order());
    out.clear();
    if (p.z == 1) {
        if (p.y != 0) {
            const gf_elem iy = f.inv(p.y);
            for (std::uint32_t a = 0; a < q; ++a)
                out.push_back(ProjLine{a, f.mul(1u ^ f.mul(a, p.x), iy), 1});
            if (p.x != 0) out.push_back(ProjLine{f.mul(p.y, f.inv(p.x)), 1, 0});
        } else if (p.x != 0) {
            const gf_elem ix = f.inv(p.x);
            for (std::uint32_t b = 0; b < q; ++b) out.push_back(ProjLine{ix, b, 1});
            out.push_back(ProjLine{0, 1, 0});
        } else {
            for (std::uint32_t a = 0; a < q; ++a) out.push_back(ProjLine{a, 1, 0});
        }
        if (p.x == 0) out.push_back(ProjLine{1, 0, 0});
    } else if (p.y == 1) {
        for (std::uint32_t a = 0; a < q; ++a) out.push_back(ProjLine{a, f.mul(a, p.x), 1});
        if (p.x != 0) out.push_back(ProjLine{f.inv(p.x), 1, 0});
        else out.push_back(ProjLine{1, 0, 0});
    } else {  // (1, 0, 0)
        for (std::uint32_t b = 0; b < q; ++b) out.push_back(ProjLine{0, b, 1});
        out.push_back(ProjLine{0, 1, 0});
    }
}

}  // namespace detail

// Buckets arc-point incidences per line: O(k * q) instead of scanning all
// q^2 + q + 1 lines against all points. Small fields use a dense counter.
// Extra workers split the arc points and merge per-line counts; the final
// histogram does not depend on the worker count.
inline VerifyReport verify_maximal_arc(const Field& f, const Arc& arc, int workers = 1) {
    if (f.m() > 10) throw std::invalid_argument("verify_maximal_arc: m must be at most 10");
    if (arc.fs != f.spec()) throw std::invalid_argument("verify_maximal_arc: field mismatch");
    const int m = f.m();
    const std::uint64_t q = f.order();
    const std::uint64_t total_lines = q * q + q + 1;

    const auto key = [m](const ProjLine& l) {
        return (std::uint64_t{l.a} << (2 * m)) | (std::uint64_t{l.b} << m) | l.c;
    };

    workers = std::max(1, std::min<int>(workers, 8));
    if (arc.points.size() < 64) workers = 1;
    const bool use_dense = 3 * m <= 21;

    struct Shard {
        std::vector<std::uint32_t> dense;
        std::vector<std::uint64_t> touched;
        std::unordered_map<std::uint64_t, std::uint32_t> sparse;
    };
    std::vector<Shard> shards(static_cast<std::size_t>(workers));

    const auto chunk_worker = [&](int w, std::size_t lo, std::size_t hi) {
        Shard& sh = shards[static_cast<std::size_t>(w)];
        if (use_dense) sh.dense.assign(std::size_t{1} << (3 * m), 0);
        else sh.sparse.reserve((hi - lo) * 4);
        std::vector<ProjLine> lines;
        for (std::size_t i = lo; i < hi; ++i) {
            detail::lines_through(f, arc.points[i], lines);
            for (const ProjLine& l : lines) {
                const std::uint64_t k = key(l);
                if (use_dense) {
                    if (sh.dense[k]++ == 0) sh.touched.push_back(k);
                } else {
                    ++sh.sparse[k];
                }
            }
        }
    };
    if (workers == 1) {
        chunk_worker(0, 0, arc.points.size());
    } else {
        std::vector<std::thread> threads;
        const std::size_t chunk = (arc.points.size() + workers - 1) / static_cast<std::size_t>(workers);
        for (int w = 0; w < workers; ++w) {
            const std::size_t lo = chunk * static_cast<std::size_t>(w);
            const std::size_t hi = std::min(arc.points.size(), lo + chunk);
            if (lo >= hi) break;
            threads.emplace_back(chunk_worker, w, lo, hi);
        }
        for (auto& th : threads) th.join();
    }

    VerifyReport rep;
    std::uint64_t hit_lines = 0;
    const auto account = [&](std::uint32_t count) {
        ++rep.histogram[count];
        ++hit_lines;
    };
    if (use_dense) {
        std::vector<std::uint64_t> touched;
        for (const Shard& sh : shards)
            touched.insert(touched.end(), sh.touched.begin(), sh.touched.end());
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        for (std::uint64_t k : touched) {
            std::uint32_t total = 0;
            for (const Shard& sh : shards)
                if (!sh.dense.empty()) total += sh.dense[k];
            account(total);
        }
    } else {
        std::unordered_map<std::uint64_t, std::uint32_t> merged = std::move(shards[0].sparse);
        for (std::size_t w = 1; w < shards.size(); ++w)
            for (const auto& [k, count] : shards[w].sparse) merged[k] += count;
        for (const auto& [k, count] : merged) account(count);
    }
    if (total_lines > hit_lines) rep.histogram[0] = total_lines - hit_lines;

    const std::uint64_t n = rep.histogram.empty() ? 0 : rep.histogram.rbegin()->first;
    rep.degree = n;
    bool support_ok = true;
    for (const auto& [size, count] : rep.histogram)
        if (size != 0 && size != n) support_ok = false;
    rep.is_max = support_ok && n >= 1 && arc.points.size() == q * (n - 1) + n;
    return rep;
}

}  // namespace maxarc
