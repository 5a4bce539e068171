#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

#include "maxarc/f2.hpp"
#include "maxarc/gf2m.hpp"
#include "maxarc/pqmaps.hpp"
#include "maxarc/subspaces.hpp"

namespace maxarc {

// splitmix64 stream: cheap, seedable, and splittable by (seed, stream id),
// so trial i draws from its own generator and worker counts cannot change
// any result.
struct SplitRng {
    std::uint64_t state;

    explicit SplitRng(std::uint64_t seed) : state(seed) {}
    SplitRng(std::uint64_t seed, std::uint64_t stream) : state(seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL)) {
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) {  // uniform in [0, n)
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        std::uint64_t v;
        do v = next();
        while (v >= limit);
        return v % n;
    }

    gf_elem elem(int m) { return static_cast<gf_elem>(below(std::uint64_t{1} << m)); }

    gf_elem nonzero_elem(int m) {
        return static_cast<gf_elem>(1 + below((std::uint64_t{1} << m) - 1));
    }
};

inline std::vector<gf_elem> random_mus(SplitRng& rng, int m, int r) {
    if (r < 0 || r > m) throw std::invalid_argument("random_mus: need 0 <= r <= m");
    std::vector<gf_elem> mus;
    std::vector<std::uint32_t> basis;
    while (static_cast<int>(mus.size()) < r) {
        const gf_elem cand = rng.nonzero_elem(m);
        if (f2::basis_insert(basis, cand)) mus.push_back(cand);
    }
    return mus;
}

inline Subspace random_subspace(SplitRng& rng, const FieldSpec& fs, int d) {
    return span(fs, random_mus(rng, fs.m, d));
}

// Canonical echelon-form enumeration of all d-dimensional subspaces of
// F2^m, ascending-pivot order. Stops early if fn returns false.
inline void enumerate_subspaces(const FieldSpec& fs, int d,
                                const std::function<bool(const Subspace&)>& fn) {
    const int m = fs.m;
    if (d < 0 || d > m) throw std::invalid_argument("enumerate_subspaces: need 0 <= d <= m");
    std::vector<int> pivots(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) pivots[static_cast<std::size_t>(i)] = i;

    const auto emit_for_pivots = [&]() -> bool {
        std::uint32_t pivot_mask = 0;
        for (int p : pivots) pivot_mask |= 1u << p;
        std::vector<std::vector<int>> free_cols(static_cast<std::size_t>(d));
        int total_free = 0;
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < pivots[static_cast<std::size_t>(i)]; ++j)
                if (!(pivot_mask >> j & 1)) free_cols[static_cast<std::size_t>(i)].push_back(j);
            total_free += static_cast<int>(free_cols[static_cast<std::size_t>(i)].size());
        }
        for (std::uint64_t assign = 0; assign < (std::uint64_t{1} << total_free); ++assign) {
            Subspace s{fs, std::vector<gf_elem>(static_cast<std::size_t>(d))};
            std::uint64_t bits = assign;
            for (int i = 0; i < d; ++i) {
                std::uint32_t row = 1u << pivots[static_cast<std::size_t>(i)];
                for (int j : free_cols[static_cast<std::size_t>(i)]) {
                    row |= static_cast<std::uint32_t>(bits & 1) << j;
                    bits >>= 1;
                }
                s.basis[static_cast<std::size_t>(i)] = row;
            }
            if (!fn(s)) return false;
        }
        return true;
    };

    // Iterate pivot combinations in lexicographic order.
    while (true) {
        if (!emit_for_pivots()) return;
        int i = d - 1;
        while (i >= 0 && pivots[static_cast<std::size_t>(i)] == m - d + i) --i;
        if (i < 0) return;
        ++pivots[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < d; ++j)
            pivots[static_cast<std::size_t>(j)] = pivots[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// Gaussian binomial [m choose d]_2 as a saturating float; used only for
// feasibility bounds.
inline long double subspace_count(int m, int d) {
    long double c = 1;
    for (int i = 0; i < d; ++i) {
        c *= (std::exp2l(m - i) - 1) / (std::exp2l(d - i) - 1);
    }
    return c;
}

enum class SearchMode { P1, PQ };
enum class Strategy { Exhaustive, Random };
enum class CoeffConstraint {
    None,            // accept any coefficient vector
    SomeHighNonzero, // require a_i != 0 (or b_i != 0 in PQ mode) for some i >= 2
    LinearOnly,      // force a_i = b_i = 0 for all i >= 2
};

struct SearchConfig {
    FieldSpec fs;
    int d = 0;
    SearchMode mode = SearchMode::P1;
    Strategy strategy = Strategy::Random;
    std::uint64_t trials = 0;           // random strategy only
    std::uint64_t seed = 0;
    CoeffConstraint constraint = CoeffConstraint::None;
    std::optional<Subspace> subgroup;   // fix the subgroup instead of sampling
    std::vector<PqMap> seed_candidates; // explicit maps tested before the sweep
    int workers = 1;
};

struct SearchHit {
    PqMap map;
    bool denniston_form = false;
    std::uint64_t trial = 0;
};

struct SearchResult {
    std::vector<SearchHit> hits;
    std::uint64_t trials_done = 0;
    std::optional<PqMap> counterexample;
};

namespace searchdetail {

inline bool constraint_ok(const SearchConfig& cfg, const std::vector<gf_elem>& a,
                          const std::vector<gf_elem>& b) {
    if (cfg.constraint == CoeffConstraint::None) return true;
    bool high = false;
    for (std::size_t i = 2; i < a.size(); ++i)
        high = high || a[i] != 0 || (cfg.mode == SearchMode::PQ && b[i] != 0);
    return cfg.constraint == CoeffConstraint::SomeHighNonzero ? high : !high;
}

inline void sample_coeffs(SplitRng& rng, const SearchConfig& cfg, std::vector<gf_elem>& a,
                          std::vector<gf_elem>& b) {
    const int m = cfg.fs.m, d = cfg.d;
    a.resize(static_cast<std::size_t>(d));
    b.assign(static_cast<std::size_t>(d), 0);
    if (d > 0 && cfg.mode == SearchMode::P1) b[0] = 1;
    do {
        for (int i = 0; i < d; ++i) a[static_cast<std::size_t>(i)] = rng.elem(m);
        if (cfg.mode == SearchMode::PQ)
            for (int i = 0; i < d; ++i) b[static_cast<std::size_t>(i)] = rng.elem(m);
    } while (!constraint_ok(cfg, a, b));
}

template <typename Fn>
void parallel_ranges(std::uint64_t n, int workers, Fn&& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || n < 2) {
        fn(0, std::uint64_t{0}, n);
        return;
    }
    const std::uint64_t chunk = (n + workers - 1) / static_cast<std::uint64_t>(workers);
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t lo = chunk * static_cast<std::uint64_t>(w);
        const std::uint64_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
    }
    for (auto& th : threads) th.join();
}

}  // namespace searchdetail

// Shared sweep core: runs the candidate stream, keeps every map passing the
// trace condition, and merges worker shards in trial order.
inline SearchResult run_search(const SearchConfig& cfg) {
    const Field f(cfg.fs);
    if (cfg.d < 0 || cfg.d > f.m()) throw std::invalid_argument("search: need 0 <= d <= m");
    if (cfg.subgroup && cfg.subgroup->dim() != cfg.d)
        throw std::invalid_argument("search: fixed subgroup dimension mismatch");
    if (cfg.constraint == CoeffConstraint::SomeHighNonzero && cfg.d <= 2)
        throw std::invalid_argument("search: the nonlinear constraint needs d >= 3");

    SearchResult result;
    for (const PqMap& cand : cfg.seed_candidates) {
        validate(cand);
        if (check_trace_condition(f, cand).ok)
            result.hits.push_back(SearchHit{cand, is_denniston_form(cand), result.trials_done});
        ++result.trials_done;
    }
    const std::uint64_t pre = result.trials_done;

    if (cfg.strategy == Strategy::Exhaustive) {
        if (cfg.fs.m > 6 && !cfg.subgroup)
            throw std::invalid_argument("search: exhaustive subgroup enumeration is limited to m <= 6");
        const int coeff_bits = cfg.fs.m * cfg.d * (cfg.mode == SearchMode::PQ ? 2 : 1);
        if (coeff_bits >= 34) throw std::invalid_argument("search: exhaustive cost bound exceeded");
        const std::uint64_t coeff_space = std::uint64_t{1} << coeff_bits;
        const long double cost =
            (cfg.subgroup ? 1.0L : subspace_count(cfg.fs.m, cfg.d)) *
            static_cast<long double>(coeff_space) * std::exp2l(cfg.d);
        if (cost > 1e10L) throw std::invalid_argument("search: exhaustive cost bound exceeded");

        std::vector<Subspace> groups;
        if (cfg.subgroup) groups.push_back(*cfg.subgroup);
        else enumerate_subspaces(cfg.fs, cfg.d, [&](const Subspace& s) {
            groups.push_back(s);
            return true;
        });

        std::vector<std::vector<SearchHit>> shard(groups.size());
        searchdetail::parallel_ranges(groups.size(), cfg.workers, [&](int, std::uint64_t lo, std::uint64_t hi) {
            const Field fl(cfg.fs);
            std::vector<gf_elem> scratch;
            for (std::uint64_t gi = lo; gi < hi; ++gi) {
                PqMap map{cfg.fs, std::vector<gf_elem>(static_cast<std::size_t>(cfg.d)),
                          std::vector<gf_elem>(static_cast<std::size_t>(cfg.d)), groups[gi]};
                if (cfg.mode == SearchMode::P1 && cfg.d > 0) map.b[0] = 1;
                const int coords = cfg.d * (cfg.mode == SearchMode::PQ ? 2 : 1);
                for (std::uint64_t code = 0; code < coeff_space; ++code) {
                    std::uint64_t c = code;
                    for (int i = 0; i < coords; ++i) {
                        const gf_elem v = static_cast<gf_elem>(c & fl.mask());
                        c >>= cfg.fs.m;
                        if (i < cfg.d) map.a[static_cast<std::size_t>(i)] = v;
                        else map.b[static_cast<std::size_t>(i - cfg.d)] = v;
                    }
                    if (!searchdetail::constraint_ok(cfg, map.a, map.b)) continue;
                    if (check_trace_condition(fl, map, &scratch).ok)
                        shard[gi].push_back(SearchHit{map, is_denniston_form(map),
                                                      pre + gi * coeff_space + code});
                }
            }
        });
        for (auto& s : shard)
            result.hits.insert(result.hits.end(), s.begin(), s.end());
        result.trials_done = pre + groups.size() * coeff_space;
    } else {
        const int workers = std::max(1, cfg.workers);
        std::vector<std::vector<SearchHit>> shard(static_cast<std::size_t>(workers));
        searchdetail::parallel_ranges(cfg.trials, workers, [&](int w, std::uint64_t lo, std::uint64_t hi) {
            const Field fl(cfg.fs);
            std::vector<gf_elem> scratch;
            std::vector<gf_elem> a, b;
            for (std::uint64_t trial = lo; trial < hi; ++trial) {
                SplitRng rng(cfg.seed, trial);
                const Subspace A = cfg.subgroup ? *cfg.subgroup : random_subspace(rng, cfg.fs, cfg.d);
                searchdetail::sample_coeffs(rng, cfg, a, b);
                PqMap map{cfg.fs, a, b, A};
                if (check_trace_condition(fl, map, &scratch).ok) {
                    const bool denn = is_denniston_form(map);
                    shard[static_cast<std::size_t>(w)].push_back(SearchHit{std::move(map), denn, pre + trial});
                }
            }
        });
        for (auto& s : shard)
            result.hits.insert(result.hits.end(), s.begin(), s.end());
        result.trials_done = pre + cfg.trials;
    }
    std::sort(result.hits.begin(), result.hits.end(),
              [](const SearchHit& l, const SearchHit& r) { return l.trial < r.trial; });
    return result;
}

inline SearchResult search_p1(SearchConfig cfg) {
    cfg.mode = SearchMode::P1;
    return run_search(cfg);
}

inline SearchResult search_pq(SearchConfig cfg) {
    cfg.mode = SearchMode::PQ;
    return run_search(cfg);
}

// Random hunt for a map with nonlinear reduced p satisfying the trace
// condition in the range m > d > m/2 + 1, m >= 5, m != 9. Any find would be
// a counterexample; the expected outcome is none.
inline std::optional<PqMap> falsify_p1(const FieldSpec& fs, int d, std::uint64_t trials,
                                       std::uint64_t seed, int workers = 1) {
    if (fs.m < 5 || fs.m == 9) throw std::invalid_argument("falsify_p1: needs m >= 5 and m != 9");
    if (!(fs.m > d && 2 * d > fs.m + 2)) throw std::invalid_argument("falsify_p1: needs m > d > m/2 + 1");
    SearchConfig cfg{fs, d, SearchMode::P1, Strategy::Random, trials, seed,
                     CoeffConstraint::SomeHighNonzero, std::nullopt, {}, workers};
    const SearchResult res = run_search(cfg);
    if (res.hits.empty()) return std::nullopt;
    return res.hits.front().map;
}

// Same hunt over {p,q}-maps in the range m > d > m/2 + 2, m >= 7, m != 9.
inline std::optional<PqMap> falsify_pq(const FieldSpec& fs, int d, std::uint64_t trials,
                                       std::uint64_t seed, int workers = 1) {
    if (fs.m < 7 || fs.m == 9) throw std::invalid_argument("falsify_pq: needs m >= 7 and m != 9");
    if (!(fs.m > d && 2 * d > fs.m + 4)) throw std::invalid_argument("falsify_pq: needs m > d > m/2 + 2");
    SearchConfig cfg{fs, d, SearchMode::PQ, Strategy::Random, trials, seed,
                     CoeffConstraint::SomeHighNonzero, std::nullopt, {}, workers};
    const SearchResult res = run_search(cfg);
    if (res.hits.empty()) return std::nullopt;
    return res.hits.front().map;
}

}  // namespace maxarc
