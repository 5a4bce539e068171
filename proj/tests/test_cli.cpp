// Integration checks of the command-line tool: exit codes, file formats,
// manifest reproducibility. Spawns the built binary.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "maxarc/io.hpp"
#include "maxarc/pqmaps.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

#define CLI_CHECK(cond)                                                              \
    do {                                                                             \
        if (!(cond)) {                                                               \
            ++failures;                                                              \
            std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  " #cond "\n"; \
        }                                                                            \
    } while (0)

int run(const std::string& args, std::string* out = nullptr) {
    const std::string out_path = (fs::temp_directory_path() / "maxarc_cli_out.txt").string();
    const std::string cmd = std::string(MAXARC_BIN) + " " + args + " >" + out_path + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(out_path);
        std::stringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / "maxarc_cli_tests";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto at = [&](const char* name) { return (dir / name).string(); };

    // construct + verify round trip, exit 0
    {
        std::string out;
        CLI_CHECK(run("construct denniston --m 5 --d 3 --seed 9 --out " + at("a.arc"), &out) == 0);
        CLI_CHECK(out.find("points=232") != std::string::npos);
        CLI_CHECK(run("verify --arc " + at("a.arc"), &out) == 0);
        CLI_CHECK(out.find("maximal degree=8") != std::string::npos);
        std::string js;
        CLI_CHECK(run("verify --arc " + at("a.arc") + " --json", &js) == 0);
        const json j = json::parse(js.substr(js.find('\n') + 1));
        CLI_CHECK(j.at("is_max").get<bool>());
        CLI_CHECK(j.at("degree").get<int>() == 8);
    }

    // identical inputs give byte-identical artifacts
    {
        CLI_CHECK(run("construct denniston --m 5 --d 3 --seed 9 --out " + at("b.arc")) == 0);
        CLI_CHECK(slurp(at("a.arc")) == slurp(at("b.arc")));
        // and the manifest records enough to rerun: replay its argv
        const json man = json::parse(slurp(at("a.arc.manifest.json")));
        std::string argv_tail;
        const auto& argv = man.at("argv");
        for (std::size_t i = 1; i + 2 < argv.size(); ++i) argv_tail += argv[i].get<std::string>() + " ";
        CLI_CHECK(run(argv_tail + "--out " + at("c.arc")) == 0);
        CLI_CHECK(slurp(at("a.arc")) == slurp(at("c.arc")));
    }

    // damaged arcs: deleted point -> exit 1; duplicate point -> exit 3
    {
        std::ifstream in(at("a.arc"));
        std::string header, line, all;
        std::getline(in, header);
        std::string first_point;
        std::getline(in, first_point);
        all = header + "\n";
        int n = 0;
        while (std::getline(in, line)) {
            all += line + "\n";
            ++n;
        }
        std::ofstream missing(at("missing.arc"));
        missing << all;  // first point dropped
        missing.close();
        std::string out;
        CLI_CHECK(run("verify --arc " + at("missing.arc"), &out) == 1);
        CLI_CHECK(out.find("not-maximal") != std::string::npos);

        std::ofstream dup(at("dup.arc"));
        dup << header << "\n" << first_point << "\n" << first_point << "\n";
        dup.close();
        CLI_CHECK(run("verify --arc " + at("dup.arc"), &out) == 3);
        CLI_CHECK(out.find("duplicate") != std::string::npos);
        CLI_CHECK(run("verify --arc " + at("nonexistent.arc"), &out) == 3);
    }

    // usage errors -> exit 2
    {
        CLI_CHECK(run("construct denniston --m 5 --out " + at("x.arc")) == 2);  // no subgroup
        CLI_CHECK(run("bogus") == 2);
        CLI_CHECK(run("verify") == 2);  // missing --arc
        CLI_CHECK(run("falsify p1 --m 9 --d 6 --trials 10 --seed 1") == 2);  // m = 9 excluded
    }

    // mathon construction from a map file; the m=9 example end to end
    {
        std::string js;
        CLI_CHECK(run("search p1 --m 5 --d 3 --strategy exhaustive --out " + at("hits") +
                          " --max-hit-files 3 --json",
                      &js) == 0);
        const json summary = json::parse(js.substr(0, js.find('\n')));
        CLI_CHECK(summary.at("hits").get<int>() == 39680);
        CLI_CHECK(summary.at("non_denniston_hits").get<int>() == 29760);
        int nfiles = 0;
        fs::path first;
        for (const auto& e : fs::directory_iterator(at("hits"))) {
            if (e.path().extension() == ".pqmap") {
                if (nfiles == 0) first = e.path();
                ++nfiles;
            }
        }
        CLI_CHECK(nfiles == 3);
        std::string out;
        CLI_CHECK(run("construct mathon --map " + first.string() + " --out " + at("m.arc"), &out) == 0);
        CLI_CHECK(out.find("points=232") != std::string::npos);
        CLI_CHECK(run("verify --arc " + at("m.arc")) == 0);
    }

    // an invalid map file fails the trace condition with exit 1
    {
        std::ofstream bad(at("bad.pqmap"));
        bad << R"({"m":5,"modulus":"25","d":2,"a":["0","1"],"b":["1","0"],"subgroup_basis":["1","2"]})";
        bad.close();
        std::string out;
        CLI_CHECK(run("construct mathon --map " + at("bad.pqmap") + " --out " + at("no.arc"), &out) == 1);
        CLI_CHECK(out.find("lambda") != std::string::npos);
        std::ofstream garbled(at("garbled.pqmap"));
        garbled << "{not json";
        garbled.close();
        CLI_CHECK(run("construct mathon --map " + at("garbled.pqmap") + " --out " + at("no.arc")) == 3);
    }

    // identity-check: small run, all pass, exit 0; --only filter works
    {
        std::string out;
        CLI_CHECK(run("identity-check --m-range 5:7 --r-range 2:3 --samples 5 --seed 2", &out) == 0);
        CLI_CHECK(out.find("coeff-product") != std::string::npos);
        CLI_CHECK(out.find("FAIL") == std::string::npos);
        CLI_CHECK(run("identity-check --m-range 6:6 --r-range 2:2 --samples 3 --only lemma22", &out) == 0);
        CLI_CHECK(out.find("coeff-shift") == std::string::npos);
        CLI_CHECK(run("identity-check --m-range 6:6 --r-range 2:2 --samples 4 --allow-dependent",
                      &out) == 0);
        CLI_CHECK(out.find("DEGENERATE") != std::string::npos);
    }

    // gapvec: valid json with both routes; m=9 refusal keeps exit 0
    {
        std::string out;
        CLI_CHECK(run("gapvec --m 12 --t 3 --seed 7 --json", &out) == 0);
        const json j = json::parse(out.substr(0, out.find('\n')));
        CLI_CHECK(j.at("valid").get<bool>());
        CLI_CHECK(!j.at("bruteforce").is_null());
        CLI_CHECK(run("gapvec --m 9 --t 3 --seed 1", &out) == 0);
        const json j9 = json::parse(out.substr(0, out.find('\n')));
        CLI_CHECK(j9.at("constructive").is_null());
        CLI_CHECK(run("gapvec --m 12 --t 6 --seed 1") == 2);  // t > r
    }

    // falsify: clean budget, exit 0, zero counterexamples
    {
        std::string out;
        CLI_CHECK(run("falsify p1 --m 7 --d 5 --trials 5000 --seed 1 --workers 2", &out) == 0);
        const json j = json::parse(out.substr(0, out.find('\n')));
        CLI_CHECK(j.at("counterexamples").get<int>() == 0);
    }

    // the m=9 pipeline through the CLI: a 32320-point arc of degree 64
    {
        using namespace maxarc;
        const Field f(find_modulus(9));
        std::vector<gf_elem> gens;
        for (gf_elem a = 0; a < f.order(); ++a)
            if (f.trace_rel(a, 3) == 0) gens.push_back(a);
        const PqMap map = p1_map(f.spec(), {1, 0, 0, 1, 0, 0}, span(f.spec(), gens));
        std::ofstream mf(at("m9.pqmap"));
        mf << to_json(map).dump(2) << "\n";
        mf.close();

        std::string out;
        CLI_CHECK(run("construct mathon --map " + at("m9.pqmap") + " --out " + at("m9.arc"), &out) == 0);
        CLI_CHECK(out.find("points=32320") != std::string::npos);
        CLI_CHECK(run("verify --arc " + at("m9.arc") + " --workers 2 --json", &out) == 0);
        const json j = json::parse(out.substr(out.find('\n') + 1));
        CLI_CHECK(j.at("is_max").get<bool>());
        CLI_CHECK(j.at("degree").get<int>() == 64);
        CLI_CHECK(j.at("histogram").at("64").get<int>() == 259065);
    }

    if (failures == 0) std::printf("cli: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
