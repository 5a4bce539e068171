#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxarc/geometry.hpp"
#include "maxarc/gf2m.hpp"
#include "maxarc/pqmaps.hpp"
#include "maxarc/scoeffs.hpp"
#include "maxarc/subspaces.hpp"

namespace maxarc {

using nlohmann::json;

struct parse_error : std::runtime_error {
    parse_error(const std::string& what, int line_number = 0)
        : std::runtime_error(line_number > 0 ? what + " (line " + std::to_string(line_number) + ")" : what),
          line(line_number) {}
    int line = 0;
};

inline json to_json(const FieldSpec& fs) {
    return json{{"m", fs.m}, {"modulus", hex_str(fs.modulus)}};
}

inline FieldSpec field_spec_from_json(const json& j) {
    return FieldSpec{j.at("m").get<int>(), parse_hex(j.at("modulus").get<std::string>())};
}

inline json hex_list(const std::vector<gf_elem>& v) {
    json arr = json::array();
    for (gf_elem e : v) arr.push_back(hex_str(e));
    return arr;
}

inline std::vector<gf_elem> hex_list_from_json(const json& arr) {
    std::vector<gf_elem> v;
    for (const auto& e : arr) v.push_back(parse_hex(e.get<std::string>()));
    return v;
}

inline json to_json(const Subspace& s) {
    json j = to_json(s.fs);
    j["basis"] = hex_list(s.basis);
    return j;
}

inline Subspace subspace_from_json(const json& j) {
    const FieldSpec fs = field_spec_from_json(j);
    const Subspace s = span(fs, hex_list_from_json(j.at("basis")));
    return s;
}

inline json to_json(const DualRep& d) {
    json j = to_json(d.fs);
    j["mus"] = hex_list(d.mus);
    return j;
}

inline json to_json(const PqMap& map) {
    json j = to_json(map.fs);
    j["d"] = map.d();
    j["a"] = hex_list(map.a);
    j["b"] = hex_list(map.b);
    j["subgroup_basis"] = hex_list(map.subgroup.basis);
    return j;
}

inline PqMap pqmap_from_json(const json& j) {
    const FieldSpec fs = field_spec_from_json(j);
    PqMap map{fs, hex_list_from_json(j.at("a")), hex_list_from_json(j.at("b")),
              span(fs, hex_list_from_json(j.at("subgroup_basis")))};
    if (j.at("d").get<int>() != map.d()) throw parse_error("pqmap: d does not match coefficient lists");
    validate(map);
    return map;
}

inline PqMap read_pqmap_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    json j;
    try {
        in >> j;
        return pqmap_from_json(j);
    } catch (const json::exception& e) {
        throw parse_error("pqmap " + path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error("pqmap " + path + ": " + e.what());
    }
}

inline json to_json(const ReducedPoly& p) {
    json arr = json::array();
    for (const auto& [e, c] : p.terms) arr.push_back(json{{"exponent", e}, {"coeff", hex_str(c)}});
    return arr;
}

// Arc file format (text):
//   maxarc v1 m=<m> modulus=<hex> n=<n>
//   <x-hex> <y-hex> <z-hex>        one point per line, sorted
inline void write_arc(std::ostream& out, const Arc& arc) {
    out << "maxarc v1 m=" << arc.fs.m << " modulus=" << hex_str(arc.fs.modulus)
        << " n=" << arc.degree_claim << "\n";
    for (const ProjPoint& p : arc.points)
        out << hex_str(p.x) << ' ' << hex_str(p.y) << ' ' << hex_str(p.z) << "\n";
}

inline void write_arc_file(const std::string& path, const Arc& arc) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    write_arc(out, arc);
}

inline Arc read_arc(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw parse_error("arc file: missing header", 1);
    Arc arc;
    {
        std::istringstream hs(header);
        std::string magic, ver, mfield, modfield, nfield;
        hs >> magic >> ver >> mfield >> modfield >> nfield;
        if (magic != "maxarc" || ver != "v1" || mfield.rfind("m=", 0) != 0 ||
            modfield.rfind("modulus=", 0) != 0 || nfield.rfind("n=", 0) != 0)
            throw parse_error("arc file: bad header '" + header + "'", 1);
        try {
            arc.fs.m = std::stoi(mfield.substr(2));
            arc.fs.modulus = parse_hex(modfield.substr(8));
            arc.degree_claim = static_cast<std::uint32_t>(std::stoul(nfield.substr(2)));
        } catch (const std::exception&) {
            throw parse_error("arc file: bad header '" + header + "'", 1);
        }
    }
    const Field f = [&] {
        try {
            return Field(arc.fs);
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("arc file: ") + e.what(), 1);
        }
    }();
    std::string line;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string xs, ys, zs, extra;
        if (!(ls >> xs >> ys >> zs) || (ls >> extra))
            throw parse_error("arc file: expected three coordinates", lineno);
        ProjPoint p;
        try {
            p = ProjPoint{parse_hex(xs), parse_hex(ys), parse_hex(zs)};
        } catch (const std::invalid_argument& e) {
            throw parse_error(std::string("arc file: ") + e.what(), lineno);
        }
        if (!f.valid(p.x) || !f.valid(p.y) || !f.valid(p.z))
            throw parse_error("arc file: coordinate outside the field", lineno);
        ProjPoint canon;
        try {
            canon = normalize_point(f, p.x, p.y, p.z);
        } catch (const std::invalid_argument&) {
            throw parse_error("arc file: zero point", lineno);
        }
        if (canon != p) throw parse_error("arc file: point is not right-normalized", lineno);
        if (!arc.points.empty() && !(arc.points.back() < p))
            throw parse_error(arc.points.back() == p ? "arc file: duplicate point"
                                                     : "arc file: points out of order",
                              lineno);
        arc.points.push_back(p);
    }
    return arc;
}

inline Arc read_arc_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return read_arc(in);
}

// Histogram rendered as `count@size` pairs, ascending by size.
inline std::string histogram_str(const VerifyReport& rep) {
    std::string s;
    for (const auto& [size, count] : rep.histogram) {
        if (!s.empty()) s += ' ';
        s += std::to_string(count) + "@" + std::to_string(size);
    }
    return s;
}

inline json to_json(const VerifyReport& rep) {
    json hist = json::object();
    for (const auto& [size, count] : rep.histogram) hist[std::to_string(size)] = count;
    return json{{"is_max", rep.is_max}, {"degree", rep.degree}, {"histogram", hist}};
}

// One manifest per run: enough to reproduce the artifacts byte for byte.
struct RunManifest {
    std::string command;
    std::vector<std::string> argv;
    json params = json::object();
    json outcome = json::object();
    double wall_ms = 0;
};

inline json to_json(const RunManifest& man) {
    return json{{"tool", "maxarc"},    {"version", "1.0.0"}, {"command", man.command},
                {"argv", man.argv},    {"params", man.params}, {"outcome", man.outcome},
                {"wall_ms", man.wall_ms}};
}

}  // namespace maxarc
