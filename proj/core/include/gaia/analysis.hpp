#pragma once

#include "gaia/gaia_lzsm.hpp"
#include "gaia/models.hpp"
#include "gaia/types.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gaia {

struct Sweep {
    double start = 0.0;
    double stop = 0.0;
    int count = 1;

    double at(int k) const {
        return (count <= 1) ? start : start + (stop - start) * k / (count - 1);
    }
};

// Four-level model with b_{13} = b_{24} = Delta, b_{14} = b_{23} = gamma
// (1-based) and a_1 < a_2. Entries are assembled from the per-crossing
// amplitudes, not by multiplying factors.
Matrix s4_closed_form(const GridModel& model);

struct InterferenceReport {
    double kappa_delta = 0.0;
    double kappa_gamma = 0.0;
    double p_a = 0.0;
    double p_b = 0.0;
    double phase = 0.0;
    double p34 = 0.0;
};

InterferenceReport p34(const GridModel& model);

using GridFamily = std::function<GridModel(double)>;

// x = sqrt(eta / v) * spacing, with a = [0, spacing] and symmetric couplings.
struct S4Family {
    double v = 1.0;
    double spacing = 1.0;
    Complex delta = 0.5;
    Complex gamma = 1.0;

    GridModel operator()(double x) const;
};

// Parameters in the sweep range where P_34 vanishes. Empty unless P_a = P_b.
std::vector<double> p34_zeros(const GridFamily& family, const Sweep& sweep);

struct OracleOptions {
    double tolerance = 1e-10;
    long max_steps = 5'000'000;
    std::optional<Window> window{};  // grid only; LZSM uses its slot window
};

struct CompareRow {
    double parameter = 0.0;
    double margin = 0.0;
    std::vector<double> p_gaia;
    std::vector<double> p_exact;
    double max_diff = 0.0;
    bool ok = true;
    std::string error;
};

// GAIA column |S_{k, initial}|^2 against the exact propagator, over the
// default window unless one is given. Rows hitting the step limit are marked
// not ok instead of aborting the sweep.
std::vector<CompareRow> compare_gaia_oracle(const GridFamily& family, const Sweep& sweep,
                                            int initial_level, const OracleOptions& options = {});

struct TraceCompareRow {
    double time = 0.0;
    std::vector<double> p_gaia;
    std::vector<double> p_exact;
    double max_diff = 0.0;
};

// Both traces sampled at the slot boundaries. The exact run starts in the
// instantaneous eigenstate of H(t_I) attached to initial_level.
std::vector<TraceCompareRow> compare_lzsm_oracle(const LzsmModel& model, int n_crossings,
                                                 int initial_level,
                                                 const OracleOptions& options = {.tolerance = 1e-9});

}  // namespace gaia
