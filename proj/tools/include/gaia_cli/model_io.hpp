#pragma once

#include "gaia/models.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace gaia::cli {

// Raw contents of a model file, kept so sweeps can rebuild the model.
struct ModelSpec {
    std::string type;  // grid | lzsm | spin_boson
    int n = 0;         // N or n_boson
    double v = 0.0;
    double eta = 0.0;
    std::vector<double> a;
    Matrix b;
    std::optional<int> crossings;
    double delta = 0.0;
    double gamma = 0.0;
    double omega = 0.0;

    bool is_grid() const { return type == "grid"; }
};

ModelSpec parse_model(const nlohmann::json& j);
nlohmann::json to_json(const ModelSpec& spec);
ModelSpec load_model(const std::string& path);
void save_model(const ModelSpec& spec, const std::string& path);

GridModel make_grid(const ModelSpec& spec);
LzsmModel make_lzsm(const ModelSpec& spec, int crossings);
int default_crossings(const ModelSpec& spec);

// Names accepted by --sweep for this model type.
std::vector<std::string> sweep_parameters(const ModelSpec& spec);
// Copy of spec with one parameter replaced; x sets eta = v x^2 / (a_2 - a_1)^2.
ModelSpec with_parameter(ModelSpec spec, const std::string& name, double value);

}  // namespace gaia::cli
