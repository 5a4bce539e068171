// Command-line front end: construct, verify, identity-check, gapvec,
// search, falsify. Exit codes: 0 success / all-pass, 1 mathematical failure
// (non-maximal arc, counterexample, failed identity), 2 usage, 3 I/O or
// parse errors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "maxarc/gapvec.hpp"
#include "maxarc/geometry.hpp"
#include "maxarc/gf2m.hpp"
#include "maxarc/io.hpp"
#include "maxarc/pqmaps.hpp"
#include "maxarc/scoeffs.hpp"
#include "maxarc/search.hpp"
#include "maxarc/subspaces.hpp"

namespace {

using namespace maxarc;

constexpr int kExitOk = 0;
constexpr int kExitMath = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
};

struct CommonOpts {
    bool json = false;
    std::string manifest_path;
};

// Every run emits exactly one manifest: to --manifest, else next to --out,
// else onto stdout.
void emit_manifest(const CommonOpts& opts, const std::string& out_path, RunManifest man,
                   const Timer& timer) {
    man.wall_ms = timer.ms();
    std::string path = opts.manifest_path;
    if (path.empty() && !out_path.empty()) path = out_path + ".manifest.json";
    const json j = to_json(man);
    if (!path.empty()) {
        std::ofstream out(path);
        out << j.dump(2) << "\n";
    } else if (opts.json) {
        std::cout << json{{"manifest", j}}.dump() << "\n";
    } else {
        std::cout << "manifest " << j.dump() << "\n";
    }
}

std::vector<std::string> collect_argv(int argc, char** argv) {
    return std::vector<std::string>(argv, argv + argc);
}

FieldSpec resolve_field(int m, const std::string& modulus_hex) {
    if (modulus_hex.empty()) return find_modulus(m);
    const FieldSpec fs{m, parse_hex(modulus_hex)};
    Field probe(fs);  // validates
    return fs;
}

std::vector<gf_elem> parse_hex_list(const std::string& csv) {
    std::vector<gf_elem> out;
    std::string cur;
    std::istringstream in(csv);
    while (std::getline(in, cur, ',')) {
        if (!cur.empty()) out.push_back(parse_hex(cur));
    }
    return out;
}

// ---------------------------------------------------------------- construct

struct ConstructOpts {
    CommonOpts common;
    std::string out;
    // denniston
    int m = 0;
    std::string modulus_hex;
    std::string a_hex = "1", h_hex = "1", b_hex;
    std::string subgroup_csv;
    int d = -1;
    std::uint64_t seed = 0;
    // mathon
    std::string map_path;
};

int run_construct_denniston(const ConstructOpts& o, const std::vector<std::string>& argv) {
    Timer timer;
    const FieldSpec fs = resolve_field(o.m, o.modulus_hex);
    const Field f(fs);

    gf_elem b;
    if (o.b_hex.empty()) {
        b = 0;
        for (gf_elem cand = 1; cand < f.order(); ++cand) {
            if (f.trace(f.mul(f.mul(parse_hex(o.a_hex), cand), f.inv(f.sqr(parse_hex(o.h_hex))))) == 1) {
                b = cand;
                break;
            }
        }
    } else {
        b = parse_hex(o.b_hex);
    }
    const gf_elem a = parse_hex(o.a_hex), h = parse_hex(o.h_hex);

    Subspace A{fs, {}};
    if (!o.subgroup_csv.empty()) {
        A = span(fs, parse_hex_list(o.subgroup_csv));
    } else if (o.d >= 0) {
        SplitRng rng(o.seed, 0);
        A = random_subspace(rng, fs, o.d);
    } else {
        throw CLI::ValidationError("construct denniston", "need --subgroup or --d");
    }

    const Arc arc = denniston_arc(f, a, h, b, A);
    write_arc_file(o.out, arc);

    RunManifest man{"construct denniston", argv};
    man.params = {{"field", to_json(fs)}, {"a", hex_str(a)}, {"h", hex_str(h)}, {"b", hex_str(b)},
                  {"subgroup", to_json(A)}, {"seed", o.seed}, {"out", o.out}};
    man.outcome = {{"points", arc.points.size()}, {"degree", arc.degree_claim}};
    emit_manifest(o.common, o.out, std::move(man), timer);
    if (!o.common.json)
        std::cout << "arc " << o.out << " points=" << arc.points.size()
                  << " degree=" << arc.degree_claim << "\n";
    else
        std::cout << json{{"points", arc.points.size()}, {"degree", arc.degree_claim}}.dump() << "\n";
    return kExitOk;
}

int run_construct_mathon(const ConstructOpts& o, const std::vector<std::string>& argv) {
    Timer timer;
    const PqMap map = read_pqmap_file(o.map_path);
    const Field f(map.fs);
    Arc arc;
    try {
        arc = build_arc(f, closed_set_from_pq(f, map));
    } catch (const trace_condition_error& e) {
        std::cerr << "construct mathon: " << e.what() << "\n";
        RunManifest man{"construct mathon", argv};
        man.params = {{"map", o.map_path}};
        man.outcome = {{"error", "trace condition"}, {"witness", hex_str(e.witness)}};
        emit_manifest(o.common, "", std::move(man), timer);
        return kExitMath;
    }
    write_arc_file(o.out, arc);
    RunManifest man{"construct mathon", argv};
    man.params = {{"map", o.map_path}, {"field", to_json(map.fs)}, {"out", o.out}};
    man.outcome = {{"points", arc.points.size()}, {"degree", arc.degree_claim}};
    emit_manifest(o.common, o.out, std::move(man), timer);
    if (!o.common.json)
        std::cout << "arc " << o.out << " points=" << arc.points.size()
                  << " degree=" << arc.degree_claim << "\n";
    else
        std::cout << json{{"points", arc.points.size()}, {"degree", arc.degree_claim}}.dump() << "\n";
    return kExitOk;
}

// ------------------------------------------------------------------- verify

int run_verify(const CommonOpts& common, const std::string& arc_path, int workers,
               const std::vector<std::string>& argv) {
    Timer timer;
    const Arc arc = read_arc_file(arc_path);
    const Field f(arc.fs);
    const VerifyReport rep = verify_maximal_arc(f, arc, workers);

    RunManifest man{"verify", argv};
    man.params = {{"arc", arc_path}, {"field", to_json(arc.fs)}};
    man.outcome = {{"is_max", rep.is_max}, {"degree", rep.degree}, {"points", arc.points.size()}};
    emit_manifest(common, "", std::move(man), timer);

    if (common.json) {
        json j = to_json(rep);
        j["points"] = arc.points.size();
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "points " << arc.points.size() << "\n";
        std::cout << "histogram " << histogram_str(rep) << "\n";
        std::cout << (rep.is_max ? "maximal" : "not-maximal") << " degree=" << rep.degree << "\n";
    }
    return rep.is_max ? kExitOk : kExitMath;
}

// ------------------------------------------------------------ identity-check

struct IdentityOpts {
    CommonOpts common;
    std::string m_range = "5:12", r_range = "2:5";
    int samples = 100;
    std::uint64_t seed = 1;
    std::string only;
    bool allow_dependent = false;
};

std::pair<int, int> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) {
        const int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
}

int run_identity_check(const IdentityOpts& o, const std::vector<std::string>& argv) {
    Timer timer;
    const auto [m_lo, m_hi] = parse_range(o.m_range);
    const auto [r_lo, r_hi] = parse_range(o.r_range);
    if (m_lo < 2 || m_hi > 14 || m_lo > m_hi || r_lo < 1 || r_lo > r_hi)
        throw CLI::ValidationError("identity-check", "infeasible ranges");

    const std::vector<std::string> all = {"coeff-shift", "coeff-det", "coeff-product", "delta",
                                          "trace-product"};
    std::string only = o.only;
    if (only == "lemma22") only = "coeff-product";  // accepted alias
    std::vector<std::string> run;
    for (const std::string& nm : all)
        if (only.empty() || only == nm) run.push_back(nm);
    if (run.empty()) throw CLI::ValidationError("identity-check", "unknown identity " + o.only);

    std::uint64_t pass = 0, fail = 0, degenerate = 0;
    std::uint64_t stream = 0;
    for (int m = m_lo; m <= m_hi; ++m) {
        const Field f(find_modulus(m));
        for (int r = r_lo; r <= std::min({r_hi, m - 2, 6}); ++r) {
            for (int sample = 0; sample < o.samples; ++sample) {
                SplitRng rng(o.seed, stream++);
                std::vector<gf_elem> mus = random_mus(rng, m, r);
                if (o.allow_dependent && r >= 2 && sample % 2 == 1) mus[1] = mus[0];
                const DualRep dual{f.spec(), mus};
                const bool dependent = f2::rank(mus) != r;

                for (const std::string& nm : run) {
                    if (dependent) {
                        // Dependent mus are out of contract; the Moore determinant
                        // degenerates to zero. Reported, not asserted.
                        gf_elem det = 0;
                        if (static_cast<int>(mus.size()) >= 1) {
                            std::vector<int> shifts;
                            for (int i = r - 1; i >= 0; --i) shifts.push_back(i);
                            det = moore_det(f, MooreMatrix{f.spec(), mus, shifts});
                        }
                        std::cout << nm << " m=" << m << " r=" << r << " sample=" << sample
                                  << " DEGENERATE det=" << hex_str(det) << "\n";
                        ++degenerate;
                        continue;
                    }
                    bool ok = true;
                    if (nm == "coeff-shift") {
                        const ReducedPoly s = s_poly(f, dual);
                        const std::uint32_t cyc = (1u << m) - 1;
                        for (std::uint32_t e = 1; e <= cyc && ok; ++e) {
                            const std::uint32_t rot = ((e << 1) | (e >> (m - 1))) & cyc;
                            const std::uint32_t rot_e = rot == 0 ? cyc : rot;
                            const auto it = s.terms.find(e);
                            const auto jt = s.terms.find(rot_e);
                            const gf_elem ce = it == s.terms.end() ? 0 : it->second;
                            const gf_elem cr = jt == s.terms.end() ? 0 : jt->second;
                            ok = f.sqr(ce) == cr;
                        }
                    } else if (nm == "coeff-det") {
                        const ReducedPoly s = s_poly(f, dual);
                        std::vector<int> idx(static_cast<std::size_t>(r));
                        const auto rec = [&](auto&& self, int pos, int lo) -> bool {
                            if (pos < 0) {
                                // idx is filled back to front, so it is already decreasing
                                return coeff_c(s, IndexSet(idx)) ==
                                       moore_det(f, MooreMatrix{f.spec(), mus, idx});
                            }
                            for (int v = lo; v < m; ++v) {
                                idx[static_cast<std::size_t>(pos)] = v;
                                if (!self(self, pos - 1, v + 1)) return false;
                            }
                            return true;
                        };
                        ok = rec(rec, r - 1, 0);
                    } else if (nm == "coeff-product") {
                        if (r < 2 || r > m - 1) continue;
                        ok = coeff_factorization_check(f, dual);
                        if (ok) {
                            std::vector<int> c_idx;
                            for (int i = r - 1; i >= 1; --i) c_idx.push_back(i);
                            ok = cramer_b1(f, dual) == coeff_c(f, dual, IndexSet(c_idx));
                        }
                    } else if (nm == "delta") {
                        if (m < r + 2) continue;
                        ok = delta(f, dual) != 0;
                    } else {  // trace-product
                        const int d = m - r;
                        const Subspace A = subgroup_from_mus(f, dual);
                        gf_elem a0 = 0, b0 = 0;
                        do {
                            a0 = rng.nonzero_elem(m);
                            b0 = rng.nonzero_elem(m);
                        } while (f.trace(f.mul(a0, b0)) != 1);
                        std::vector<gf_elem> av(static_cast<std::size_t>(d), 0),
                            bv(static_cast<std::size_t>(d), 0);
                        av[0] = a0;
                        bv[0] = b0;
                        const PqMap map{f.spec(), av, bv, A};
                        ok = product_congruence_check(f, map, dual);
                    }
                    std::cout << nm << " m=" << m << " r=" << r << " sample=" << sample << ' '
                              << (ok ? "PASS" : "FAIL") << "\n";
                    ++(ok ? pass : fail);
                }
            }
        }
    }
    RunManifest man{"identity-check", argv};
    man.params = {{"m_range", o.m_range}, {"r_range", o.r_range}, {"samples", o.samples},
                  {"seed", o.seed}, {"only", o.only}, {"allow_dependent", o.allow_dependent}};
    man.outcome = {{"pass", pass}, {"fail", fail}, {"degenerate", degenerate}};
    emit_manifest(o.common, "", std::move(man), timer);
    return fail == 0 ? kExitOk : kExitMath;
}

// ------------------------------------------------------------------- gapvec

struct GapvecOpts {
    CommonOpts common;
    int m = 0, t = 0, r = -1;
    std::string mus_csv;
    std::string modulus_hex;
    std::uint64_t seed = 0;
};

int run_gapvec(const GapvecOpts& o, const std::vector<std::string>& argv) {
    Timer timer;
    const FieldSpec fs = resolve_field(o.m, o.modulus_hex);
    const Field f(fs);
    const int r = o.r >= 0 ? o.r : std::max(1, (o.m - 3) / 2);

    std::vector<gf_elem> mus;
    if (!o.mus_csv.empty()) {
        mus = parse_hex_list(o.mus_csv);
    } else {
        SplitRng rng(o.seed, 0);
        mus = random_mus(rng, o.m, r);
    }
    const SpanState st = make_span_state(f, mus);

    const auto bits_str = [](const GapVector& w) {
        std::string s;
        for (auto b : w.bits) s += b ? '1' : '0';
        return s;
    };

    json j{{"m", o.m}, {"r", st.r()}, {"t", o.t}, {"mus", hex_list(st.mus)}};
    bool valid = false;
    std::string branch;
    if (o.m == 9) {
        // Outside the constructive procedure's range; documented refusal.
        j["constructive"] = nullptr;
        j["note"] = "m=9 is excluded from the constructive procedure";
    } else {
        try {
            const ConstructiveGap cg = gap_vector_constructive(st, o.t);
            valid = gap_vector_valid(st, o.t, cg.w);
            branch = cg.branch;
            j["constructive"] = bits_str(cg.w);
            j["branch"] = branch;
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError("gapvec", e.what());
        }
    }
    const std::optional<GapVector> bf = gap_vector_bruteforce(st, o.t);
    j["bruteforce"] = bf ? json(bits_str(*bf)) : json(nullptr);
    j["valid"] = valid;

    std::cout << j.dump() << "\n";
    RunManifest man{"gapvec", argv};
    man.params = {{"field", to_json(fs)}, {"t", o.t}, {"r", st.r()}, {"seed", o.seed},
                  {"mus", hex_list(st.mus)}};
    man.outcome = {{"valid", valid}, {"branch", branch}, {"bruteforce_found", bf.has_value()}};
    emit_manifest(o.common, "", std::move(man), timer);
    return kExitOk;
}

// ----------------------------------------------------------- search/falsify

struct SearchOpts {
    CommonOpts common;
    int m = 0, d = 0;
    std::string modulus_hex;
    std::string strategy = "random";
    std::string constraint = "none";
    std::uint64_t trials = 10000;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string out;
    std::string try_map;
    std::uint64_t max_hit_files = 1000;
};

int run_search(const SearchOpts& o, SearchMode mode, const std::vector<std::string>& argv) {
    Timer timer;
    SearchConfig cfg;
    cfg.fs = resolve_field(o.m, o.modulus_hex);
    cfg.d = o.d;
    cfg.mode = mode;
    cfg.strategy = o.strategy == "exhaustive" ? Strategy::Exhaustive : Strategy::Random;
    cfg.trials = o.trials;
    cfg.seed = o.seed;
    cfg.workers = o.workers;
    if (o.constraint == "nonlinear") cfg.constraint = CoeffConstraint::SomeHighNonzero;
    else if (o.constraint == "linear-only") cfg.constraint = CoeffConstraint::LinearOnly;
    if (!o.try_map.empty()) cfg.seed_candidates.push_back(read_pqmap_file(o.try_map));

    const SearchResult res = mode == SearchMode::P1 ? search_p1(cfg) : search_pq(cfg);

    std::uint64_t written = 0;
    if (!o.out.empty()) {
        std::filesystem::create_directories(o.out);
        for (const SearchHit& hit : res.hits) {
            if (written >= o.max_hit_files) break;
            std::ofstream out(o.out + "/hit-" + std::to_string(hit.trial) + ".pqmap");
            out << to_json(hit.map).dump(2) << "\n";
            ++written;
        }
    }
    std::uint64_t non_denniston = 0;
    for (const SearchHit& hit : res.hits)
        if (!hit.denniston_form) ++non_denniston;

    const json summary{{"trials", res.trials_done}, {"hits", res.hits.size()},
                       {"non_denniston_hits", non_denniston}, {"counterexamples", 0},
                       {"wall_ms", timer.ms()}};
    std::cout << summary.dump() << "\n";

    RunManifest man{mode == SearchMode::P1 ? "search p1" : "search pq", argv};
    man.params = {{"field", to_json(cfg.fs)}, {"d", o.d}, {"strategy", o.strategy},
                  {"trials", o.trials}, {"seed", o.seed}, {"constraint", o.constraint},
                  {"workers", o.workers}};
    man.outcome = summary;
    emit_manifest(o.common, o.out.empty() ? "" : o.out + "/summary", std::move(man), timer);
    return kExitOk;
}

int run_falsify(const SearchOpts& o, SearchMode mode, const std::vector<std::string>& argv) {
    Timer timer;
    const FieldSpec fs = resolve_field(o.m, o.modulus_hex);
    std::optional<PqMap> counterexample;
    try {
        counterexample = mode == SearchMode::P1
                             ? falsify_p1(fs, o.d, o.trials, o.seed, o.workers)
                             : falsify_pq(fs, o.d, o.trials, o.seed, o.workers);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError("falsify", e.what());
    }

    const json summary{{"trials", o.trials}, {"hits", counterexample ? 1 : 0},
                       {"counterexamples", counterexample ? 1 : 0}, {"wall_ms", timer.ms()}};
    std::cout << summary.dump() << "\n";
    if (counterexample && !o.out.empty()) {
        std::ofstream out(o.out);
        out << to_json(*counterexample).dump(2) << "\n";
    }
    RunManifest man{mode == SearchMode::P1 ? "falsify p1" : "falsify pq", argv};
    man.params = {{"field", to_json(fs)}, {"d", o.d}, {"trials", o.trials}, {"seed", o.seed},
                  {"workers", o.workers}};
    man.outcome = summary;
    emit_manifest(o.common, counterexample ? o.out : "", std::move(man), timer);
    return counterexample ? kExitMath : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximal arcs in PG(2, 2^m): construction, verification, search"};
    app.require_subcommand(1);
    const std::vector<std::string> full_argv = collect_argv(argc, argv);

    // construct
    auto* construct = app.add_subcommand("construct", "build an arc file");
    construct->require_subcommand(1);
    ConstructOpts copts;
    auto* denn = construct->add_subcommand("denniston", "conic pencil over a subgroup");
    denn->set_help_flag("--help", "print help");  // frees --h for the form coefficient
    denn->add_option("--m", copts.m, "field degree")->required();
    denn->add_option("--modulus", copts.modulus_hex, "modulus (hex), default smallest");
    denn->add_option("--a", copts.a_hex, "quadratic form coefficient a (hex)");
    denn->add_option("--h", copts.h_hex, "quadratic form coefficient h (hex)");
    denn->add_option("--b", copts.b_hex, "quadratic form coefficient b (hex), default smallest valid");
    denn->add_option("--subgroup", copts.subgroup_csv, "subgroup generators (hex, comma separated)");
    denn->add_option("--d", copts.d, "random subgroup dimension (with --seed)");
    denn->add_option("--seed", copts.seed, "seed for random subgroup");
    denn->add_option("--out", copts.out, "output arc file")->required();
    denn->add_flag("--json", copts.common.json, "machine-readable stdout");
    denn->add_option("--manifest", copts.common.manifest_path, "manifest path");

    auto* mathon = construct->add_subcommand("mathon", "closed set from a {p,q}-map file");
    mathon->add_option("--map", copts.map_path, "PqMap JSON file")->required();
    mathon->add_option("--out", copts.out, "output arc file")->required();
    mathon->add_flag("--json", copts.common.json, "machine-readable stdout");
    mathon->add_option("--manifest", copts.common.manifest_path, "manifest path");

    // verify
    auto* verify = app.add_subcommand("verify", "full line check of an arc file");
    CommonOpts vcommon;
    std::string arc_path;
    int verify_workers = 1;
    verify->add_option("--arc", arc_path, "arc file")->required();
    verify->add_option("--workers", verify_workers, "worker threads");
    verify->add_flag("--json", vcommon.json, "machine-readable stdout");
    verify->add_option("--manifest", vcommon.manifest_path, "manifest path");

    // identity-check
    auto* identity = app.add_subcommand("identity-check", "coefficient identity suites");
    IdentityOpts iopts;
    identity->add_option("--m-range", iopts.m_range, "m range lo:hi");
    identity->add_option("--r-range", iopts.r_range, "r range lo:hi");
    identity->add_option("--samples", iopts.samples, "samples per (identity, m, r)");
    identity->add_option("--seed", iopts.seed, "rng seed");
    identity->add_option("--only", iopts.only, "run a single identity");
    identity->add_flag("--allow-dependent", iopts.allow_dependent,
                       "inject dependent mus on odd samples (reported, not asserted)");
    identity->add_flag("--json", iopts.common.json, "machine-readable stdout");
    identity->add_option("--manifest", iopts.common.manifest_path, "manifest path");

    // gapvec
    auto* gap = app.add_subcommand("gapvec", "constructive + brute-force gap vectors");
    GapvecOpts gopts;
    gap->add_option("--m", gopts.m, "field degree")->required();
    gap->add_option("--t", gopts.t, "run bound parameter")->required();
    gap->add_option("--r", gopts.r, "number of mus, default floor((m-3)/2)");
    gap->add_option("--mus", gopts.mus_csv, "mus (hex, comma separated)");
    gap->add_option("--modulus", gopts.modulus_hex, "modulus (hex)");
    gap->add_option("--seed", gopts.seed, "seed for random mus");
    gap->add_flag("--json", gopts.common.json, "machine-readable stdout");
    gap->add_option("--manifest", gopts.common.manifest_path, "manifest path");

    // search / falsify
    const auto add_search_opts = [](CLI::App* cmd, SearchOpts& so, bool falsify) {
        cmd->add_option("--m", so.m, "field degree")->required();
        cmd->add_option("--d", so.d, "subgroup dimension")->required();
        cmd->add_option("--modulus", so.modulus_hex, "modulus (hex)");
        if (!falsify) {
            cmd->add_option("--strategy", so.strategy, "exhaustive|random");
            cmd->add_option("--constraint", so.constraint, "none|nonlinear|linear-only");
            cmd->add_option("--try-map", so.try_map, "PqMap file tested before the sweep");
            cmd->add_option("--max-hit-files", so.max_hit_files, "cap on written hit files");
        }
        cmd->add_option("--trials", so.trials, "random trials");
        cmd->add_option("--seed", so.seed, "rng seed");
        cmd->add_option("--workers", so.workers, "worker threads");
        cmd->add_option("--out", so.out, falsify ? "counterexample file" : "hit directory");
        cmd->add_flag("--json", so.common.json, "machine-readable stdout");
        cmd->add_option("--manifest", so.common.manifest_path, "manifest path");
    };
    auto* search_cmd = app.add_subcommand("search", "hunt for maps passing the trace condition");
    search_cmd->require_subcommand(1);
    SearchOpts s1, s2;
    auto* search_p1_cmd = search_cmd->add_subcommand("p1", "{p,1}-maps");
    add_search_opts(search_p1_cmd, s1, false);
    auto* search_pq_cmd = search_cmd->add_subcommand("pq", "{p,q}-maps");
    add_search_opts(search_pq_cmd, s2, false);

    auto* falsify_cmd = app.add_subcommand("falsify", "hunt for bound-theorem counterexamples");
    falsify_cmd->require_subcommand(1);
    SearchOpts f1, f2;
    auto* falsify_p1_cmd = falsify_cmd->add_subcommand("p1", "nonlinear {p,1} candidates");
    add_search_opts(falsify_p1_cmd, f1, true);
    auto* falsify_pq_cmd = falsify_cmd->add_subcommand("pq", "nonlinear {p,q} candidates");
    add_search_opts(falsify_pq_cmd, f2, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (denn->parsed()) return run_construct_denniston(copts, full_argv);
        if (mathon->parsed()) return run_construct_mathon(copts, full_argv);
        if (verify->parsed()) return run_verify(vcommon, arc_path, verify_workers, full_argv);
        if (identity->parsed()) return run_identity_check(iopts, full_argv);
        if (gap->parsed()) return run_gapvec(gopts, full_argv);
        if (search_p1_cmd->parsed()) return run_search(s1, SearchMode::P1, full_argv);
        if (search_pq_cmd->parsed()) return run_search(s2, SearchMode::PQ, full_argv);
        if (falsify_p1_cmd->parsed()) return run_falsify(f1, SearchMode::P1, full_argv);
        if (falsify_pq_cmd->parsed()) return run_falsify(f2, SearchMode::PQ, full_argv);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "maxarc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const parse_error& e) {
        std::cerr << "maxarc: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "maxarc: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "maxarc: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
