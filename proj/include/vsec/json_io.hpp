#pragma once

// JSON (de)serialization for towers, matrices, linear-set specs, (f,g)
// systems, spread sets, and census reports, plus atomic file writes.  Reports
// are byte-stable: nlohmann::json keeps object keys sorted, and the timing
// field is pinned to zero in the serialized artifact (wall-clock time goes to
// the console instead) so equal parameters give identical bytes.

#include "vsec/spread.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace vsec {

using json = nlohmann::json;

inline json tower_to_json(const FieldTower& T) {
    json degrees = json::array(), moduli = json::array();
    for (int i = 0; i < T.num_levels(); ++i) {
        degrees.push_back(T.level(i).step_degree);
        moduli.push_back(T.level(i).modulus);
    }
    return {{"p", T.p()}, {"degrees", degrees}, {"moduli", moduli}};
}

inline json mat_to_json(const Mat& M) {
    return {{"rows", M.rows}, {"cols", M.cols}, {"a", M.a}};
}

inline Mat mat_from_json(const json& j) {
    Mat M(j.at("rows").get<int>(), j.at("cols").get<int>());
    auto a = j.at("a").get<std::vector<elem>>();
    if (a.size() != M.a.size()) throw std::invalid_argument("mat_from_json: size mismatch");
    M.a = std::move(a);
    return M;
}

inline json spec_to_json(const FieldTower& T, const LinearSetSpec& sp) {
    json forms = json::array();
    for (int r = 0; r < 6; ++r) forms.push_back(sp.forms.row(r));
    return {{"q", T.size(sp.q_level())}, {"a", sp.param.a}, {"forms", forms}};
}

inline LinearSetSpec spec_from_json(const FieldTower& T, const QuadraticParam& P, const json& j) {
    if (j.at("q").get<std::uint32_t>() != T.size(P.q_level))
        throw std::invalid_argument("spec_from_json: field order mismatch");
    if (j.at("a").get<elem>() != P.a)
        throw std::invalid_argument("spec_from_json: quadratic parameter mismatch");
    auto forms = j.at("forms");
    if (forms.size() != 6) throw std::invalid_argument("spec_from_json: want 6 form rows");
    LinearSetSpec sp{P, Mat(6, 6)};
    for (int r = 0; r < 6; ++r) {
        auto row = forms.at(std::size_t(r)).get<std::vector<elem>>();
        if (row.size() != 6) throw std::invalid_argument("spec_from_json: want 6 coefficients");
        for (int c = 0; c < 6; ++c) {
            if (row[std::size_t(c)] >= T.size(P.q_level))
                throw std::invalid_argument("spec_from_json: coefficient outside field");
            sp.forms.at(r, c) = row[std::size_t(c)];
        }
    }
    return sp;
}

inline json poly_to_json(const MultiPoly& p) {
    json terms = json::array();
    for (auto& [m, c] : p) terms.push_back({{"m", m}, {"c", c}});
    return terms;
}

inline json fg_to_json(const FGSystem& sys) {
    return {{"f", poly_to_json(sys.f)}, {"g", poly_to_json(sys.g)}};
}

inline json spreadset_to_json(const FieldTower& T, const SpreadSet& C) {
    json mats = json::array();
    for (auto& M : C.mats) mats.push_back(M.a);
    return {{"n", C.n}, {"field", T.size(C.lvl)}, {"matrices", mats}};
}

inline SpreadSet spreadset_from_json(const FieldTower& T, const json& j) {
    SpreadSet C;
    C.n = j.at("n").get<int>();
    std::uint32_t order = j.at("field").get<std::uint32_t>();
    C.lvl = T.level_of_size(order);
    if (C.lvl < 0) throw std::invalid_argument("spreadset_from_json: field order not in tower");
    for (auto& row : j.at("matrices")) {
        Mat M(C.n, C.n);
        auto a = row.get<std::vector<elem>>();
        if (a.size() != M.a.size())
            throw std::invalid_argument("spreadset_from_json: matrix size mismatch");
        for (elem v : a)
            if (v >= order) throw std::invalid_argument("spreadset_from_json: entry outside field");
        M.a = std::move(a);
        C.mats.push_back(std::move(M));
    }
    return C;
}

struct CensusReport {
    std::string command;
    json params = json::object();
    std::map<std::string, std::uint64_t> counts;
    std::vector<json> witnesses;
    json checkpoint; // null when not applicable
};

inline json report_to_json(const CensusReport& r) {
    json counts = json::object();
    for (auto& [k, v] : r.counts) counts[k] = v;
    return {{"command", r.command}, {"params", r.params},      {"counts", counts},
            {"witnesses", r.witnesses}, {"elapsed_ms", 0},     {"checkpoint", r.checkpoint}};
}

inline std::string report_csv(const CensusReport& r) {
    std::string s = "key,value\n";
    for (auto& [k, v] : r.counts) s += k + "," + std::to_string(v) + "\n";
    return s;
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("write_file_atomic: cannot open " + tmp);
        f << content;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("read_file: cannot open " + path);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

} // namespace vsec
