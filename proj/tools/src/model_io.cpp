#include "gaia_cli/model_io.hpp"

#include "gaia/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace gaia::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) {
    throw Error(ErrorCode::InvalidArgument, "model file: " + msg);
}

double number(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("missing key '") + key + "'");
    if (!j.at(key).is_number()) bad(std::string("'") + key + "' must be a number");
    return j.at(key).get<double>();
}

int integer(const json& j, const char* key) {
    if (!j.contains(key)) bad(std::string("missing key '") + key + "'");
    if (!j.at(key).is_number_integer()) bad(std::string("'") + key + "' must be an integer");
    return j.at(key).get<int>();
}

Complex complex_entry(const json& j) {
    if (!j.is_object() || j.size() != 2 || !j.contains("re") || !j.contains("im") ||
        !j.at("re").is_number() || !j.at("im").is_number()) {
        bad("complex entries must be {\"re\": num, \"im\": num}");
    }
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

void reject_unknown(const json& j, const std::set<std::string>& allowed) {
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) bad("unknown key '" + item.key() + "'");
    }
}

}  // namespace

ModelSpec parse_model(const json& j) {
    if (!j.is_object()) bad("top level must be an object");
    if (!j.contains("type") || !j.at("type").is_string()) bad("missing string key 'type'");
    ModelSpec s;
    s.type = j.at("type").get<std::string>();
    if (s.type == "grid" || s.type == "lzsm") {
        std::set<std::string> allowed = {"type", "N", "v", "eta", "a", "b"};
        if (s.type == "lzsm") allowed.insert("crossings");
        reject_unknown(j, allowed);
        s.n = integer(j, "N");
        s.v = number(j, "v");
        s.eta = number(j, "eta");
        if (!j.contains("a") || !j.at("a").is_array()) bad("'a' must be an array");
        for (const auto& x : j.at("a")) {
            if (!x.is_number()) bad("'a' entries must be numbers");
            s.a.push_back(x.get<double>());
        }
        if (!j.contains("b") || !j.at("b").is_array()) bad("'b' must be an array of rows");
        const json& rows = j.at("b");
        const auto nr = static_cast<Eigen::Index>(rows.size());
        const auto nc = nr > 0 && rows[0].is_array() ? static_cast<Eigen::Index>(rows[0].size()) : 0;
        s.b = Matrix::Zero(nr, nc);
        for (Eigen::Index r = 0; r < nr; ++r) {
            if (!rows[r].is_array() || static_cast<Eigen::Index>(rows[r].size()) != nc) {
                bad("'b' rows must be arrays of equal length");
            }
            for (Eigen::Index c = 0; c < nc; ++c) s.b(r, c) = complex_entry(rows[r][c]);
        }
        if (s.type == "lzsm" && j.contains("crossings")) s.crossings = integer(j, "crossings");
    } else if (s.type == "spin_boson") {
        reject_unknown(j, {"type", "n_boson", "v", "eta", "Delta", "gamma", "Omega", "crossings"});
        s.n = integer(j, "n_boson");
        s.v = number(j, "v");
        s.eta = number(j, "eta");
        s.delta = number(j, "Delta");
        s.gamma = number(j, "gamma");
        s.omega = number(j, "Omega");
        if (j.contains("crossings")) s.crossings = integer(j, "crossings");
    } else {
        bad("unknown model type '" + s.type + "'");
    }
    return s;
}

json to_json(const ModelSpec& s) {
    json j;
    j["type"] = s.type;
    if (s.type == "spin_boson") {
        j["n_boson"] = s.n;
        j["v"] = s.v;
        j["eta"] = s.eta;
        j["Delta"] = s.delta;
        j["gamma"] = s.gamma;
        j["Omega"] = s.omega;
    } else {
        j["N"] = s.n;
        j["v"] = s.v;
        j["eta"] = s.eta;
        j["a"] = s.a;
        json rows = json::array();
        for (Eigen::Index r = 0; r < s.b.rows(); ++r) {
            json row = json::array();
            for (Eigen::Index c = 0; c < s.b.cols(); ++c) {
                row.push_back({{"re", s.b(r, c).real()}, {"im", s.b(r, c).imag()}});
            }
            rows.push_back(row);
        }
        j["b"] = rows;
    }
    if (s.crossings) j["crossings"] = *s.crossings;
    return j;
}

ModelSpec load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidArgument, std::string("model file is not valid JSON: ") + e.what());
    }
    return parse_model(j);
}

void save_model(const ModelSpec& spec, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << to_json(spec).dump(2) << "\n";
}

GridModel make_grid(const ModelSpec& s) {
    if (!s.is_grid()) throw Error(ErrorCode::InvalidArgument, "command needs a grid model");
    return build_grid(s.n, s.v, s.eta, s.a, s.b);
}

int default_crossings(const ModelSpec& s) { return s.crossings.value_or(20); }

LzsmModel make_lzsm(const ModelSpec& s, int crossings) {
    if (s.type == "lzsm") return build_lzsm(s.n, s.v, s.eta, s.a, s.b, crossings);
    if (s.type == "spin_boson") {
        return build_spin_boson(s.delta, s.gamma, s.omega, s.v, s.eta, s.n, crossings);
    }
    throw Error(ErrorCode::InvalidArgument, "command needs an lzsm or spin_boson model");
}

std::vector<std::string> sweep_parameters(const ModelSpec& s) {
    if (s.type == "grid") return {"eta", "v", "x"};
    if (s.type == "spin_boson") return {"eta", "v", "Delta", "gamma", "Omega"};
    return {"eta", "v"};
}

ModelSpec with_parameter(ModelSpec s, const std::string& name, double value) {
    if (name == "eta") {
        s.eta = value;
    } else if (name == "v") {
        s.v = value;
    } else if (name == "x" && s.is_grid()) {
        if (s.a.size() < 2) throw Error(ErrorCode::InvalidArgument, "sweep x needs N >= 2");
        const double spacing = s.a[1] - s.a[0];
        s.eta = s.v * value * value / (spacing * spacing);
    } else if (name == "Delta" && s.type == "spin_boson") {
        s.delta = value;
    } else if (name == "gamma" && s.type == "spin_boson") {
        s.gamma = value;
    } else if (name == "Omega" && s.type == "spin_boson") {
        s.omega = value;
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown sweep parameter '" + name + "'");
    }
    return s;
}

}  // namespace gaia::cli
