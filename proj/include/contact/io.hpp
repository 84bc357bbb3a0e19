#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "contact/bounds.hpp"
#include "contact/lattice.hpp"
#include "contact/packing.hpp"
#include "contact/search.hpp"

namespace contact {

inline constexpr const char* kVersion = "0.1.0";

// All floating output is printed to 12 significant digits; rounding through
// the printed form keeps JSON payloads and text output consistent.
inline double round12(double v) {
    if (v == 0.0) return 0.0;  // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return std::strtod(buf, nullptr);
}

inline std::string format12(double v) {
    if (v == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// packings

inline nlohmann::json packing_to_json(const Packing& p) {
    nlohmann::json centers = nlohmann::json::array();
    if (p.rep == Rep::fcc) {
        for (const auto& q : p.fcc) centers.push_back({q.a, q.b, q.c});
    } else {
        for (const auto& q : p.real) centers.push_back({round12(q.x), round12(q.y), round12(q.z)});
    }
    return {{"representation", p.rep == Rep::fcc ? "fcc" : "real"}, {"centers", centers}};
}

inline Packing packing_from_json(const nlohmann::json& j) {
    const std::string rep = j.at("representation").get<std::string>();
    const auto& centers = j.at("centers");
    if (!centers.is_array()) throw std::runtime_error("packing: \"centers\" must be an array");
    if (rep == "fcc") {
        std::vector<FccPoint> pts;
        pts.reserve(centers.size());
        for (const auto& c : centers) {
            if (!c.is_array() || c.size() != 3 || !c[0].is_number_integer() ||
                !c[1].is_number_integer() || !c[2].is_number_integer())
                throw std::runtime_error("packing: fcc centers must be integer triples");
            pts.push_back({c[0].get<int>(), c[1].get<int>(), c[2].get<int>()});
        }
        return Packing::from_fcc(std::move(pts));
    }
    if (rep == "real") {
        std::vector<Vec3> pts;
        pts.reserve(centers.size());
        for (const auto& c : centers) {
            if (!c.is_array() || c.size() != 3)
                throw std::runtime_error("packing: real centers must be coordinate triples");
            pts.push_back({c[0].get<double>(), c[1].get<double>(), c[2].get<double>()});
        }
        return Packing::from_real(std::move(pts));
    }
    throw std::runtime_error("packing: representation must be \"fcc\" or \"real\"");
}

// XYZ for visualization tools: count, comment, then one "S x y z" line per
// center in real coordinates (fcc integers are scaled by sqrt(2)).
inline std::string packing_to_xyz(const Packing& p, const std::string& comment = "unit-ball packing") {
    std::ostringstream os;
    os << p.size() << "\n" << comment << "\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        const Vec3 c = p.center(i);
        os << "S " << format12(c.x) << " " << format12(c.y) << " " << format12(c.z) << "\n";
    }
    return os.str();
}

inline std::string edges_to_csv(const ContactGraph& g) {
    std::ostringstream os;
    os << "i,j\n";
    for (const auto& [i, j] : g.edges) os << i << "," << j << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// lattices

// Accepts {"basis": [[..3 rows..]]} (row vectors) or {"gram": 3x3}.
inline LatticeBasis lattice_from_json(const nlohmann::json& j) {
    if (j.contains("basis")) {
        const auto& b = j.at("basis");
        if (!b.is_array() || b.size() != 3)
            throw std::runtime_error("lattice: \"basis\" must be 3 row vectors");
        Vec3 rows[3];
        for (int i = 0; i < 3; ++i) {
            if (!b[i].is_array() || b[i].size() != 3)
                throw std::runtime_error("lattice: basis rows must have 3 coordinates");
            rows[i] = {b[i][0].get<double>(), b[i][1].get<double>(), b[i][2].get<double>()};
        }
        LatticeBasis basis{rows[0], rows[1], rows[2]};
        basis.validate();
        return basis;
    }
    if (j.contains("gram")) {
        const auto& g = j.at("gram");
        if (!g.is_array() || g.size() != 3)
            throw std::runtime_error("lattice: \"gram\" must be a 3x3 matrix");
        std::array<std::array<double, 3>, 3> m{};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) m[i][k] = g[i][k].get<double>();
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                if (m[i][k] != m[k][i])
                    throw std::runtime_error("lattice: Gram matrix must be symmetric");
        LatticeBasis basis = LatticeBasis::from_gram(m);
        basis.validate();
        return basis;
    }
    throw std::runtime_error("lattice: need either \"basis\" or \"gram\"");
}

inline nlohmann::json superbase_to_json(const Superbase& sb) {
    nlohmann::json vecs = nlohmann::json::array();
    for (const auto& v : sb.v) vecs.push_back({round12(v.x), round12(v.y), round12(v.z)});
    nlohmann::json selling = nlohmann::json::array();
    for (double p : sb.selling()) selling.push_back(round12(p));
    return {{"superbase", vecs}, {"selling", selling}, {"reduced", sb.reduced()}};
}

// ---------------------------------------------------------------------------
// reports

inline nlohmann::json bound_report_to_json(const BoundReport& r) {
    nlohmann::json inter = nlohmann::json::object();
    for (const auto& [name, v] : r.intermediates) inter[name] = round12(v);
    nlohmann::json j = {{"formula", r.formula_id},
                        {"n", r.n},
                        {"value", round12(r.value)},
                        {"coefficient", round12(r.coefficient)},
                        {"intermediates", inter}};
    if (r.conjectural) j["conjectural"] = true;
    return j;
}

inline nlohmann::json constants_to_json(const std::vector<ConstantEntry>& ledger) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : ledger)
        arr.push_back({{"name", e.name},
                       {"recomputed", round12(e.recomputed)},
                       {"published", e.published},
                       {"diff", round12(e.diff)},
                       {"comparison", e.comparison}});
    return arr;
}

inline std::string constants_to_csv(const std::vector<ConstantEntry>& ledger) {
    std::ostringstream os;
    os << "name,recomputed,published,diff,comparison\n";
    for (const auto& e : ledger)
        os << e.name << "," << format12(e.recomputed) << "," << format12(e.published) << ","
           << format12(e.diff) << "," << e.comparison << "\n";
    return os.str();
}

inline std::string table_to_csv(const BestKnownTable& table,
                                const std::vector<std::string>& witness_files) {
    std::ostringstream os;
    os << "n,best_contacts,witness_file,bound_lattice,cluster_value\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const TableRow& r = table.rows[i];
        os << r.n << "," << r.best << ","
           << (i < witness_files.size() ? witness_files[i] : "") << ","
           << format12(r.bound_lattice) << ",";
        if (r.cluster_value >= 0) os << r.cluster_value;
        os << "\n";
    }
    return os.str();
}

// Uniform shape for verification outputs:
// {check, inputs, computed, reference, margin, pass}
inline nlohmann::json verification_report(const std::string& check, nlohmann::json inputs,
                                          nlohmann::json computed, nlohmann::json reference,
                                          double margin, bool pass) {
    return {{"check", check},       {"inputs", std::move(inputs)},
            {"computed", std::move(computed)}, {"reference", std::move(reference)},
            {"margin", round12(margin)},       {"pass", pass}};
}

// ---------------------------------------------------------------------------
// files

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

inline nlohmann::json load_json(const std::string& path) {
    return nlohmann::json::parse(read_text_file(path));
}

}  // namespace contact
