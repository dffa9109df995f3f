#pragma once

#include "gaia/models.hpp"
#include "gaia/types.hpp"

#include <functional>
#include <vector>

namespace gaia {

using HamiltonianFn = std::function<Matrix(double)>;

struct PropagatorConfig {
    Window window;
    double tolerance = 1e-10;  // local error per step, max-norm of the step operator
    long max_steps = 5'000'000;
    std::vector<double> sample_times;  // inside the window; both ends are always sampled
    Vector initial_state;              // empty -> |0>
    double initial_step = 0.0;         // <= 0 -> heuristic
};

// Exponential-midpoint stepping U <- exp(-i h H(t + h/2)) U with step-doubling
// error control. Works for t_final < t_initial as well (backward evolution).
PropagationTrace propagate_exact(const HamiltonianFn& h, int dim, const PropagatorConfig& config);
PropagationTrace propagate_exact(const GridModel& model, PropagatorConfig config);
PropagationTrace propagate_exact(const LzsmModel& model, PropagatorConfig config);

// Full evolution operator between two times.
Matrix evolution_operator(const HamiltonianFn& h, int dim, double t_from, double t_to,
                          double tolerance = 1e-10, long max_steps = 5'000'000,
                          double initial_step = 0.0);

// Grid: crossings +- 100 max(1, sqrt kappa_max) / sqrt(eta v).
// LZSM: [pi/(2v), pi/(2v) + n pi/v].
Window default_window(const GridModel& model);
Window default_window(const LzsmModel& model, int n_crossings);

// Instantaneous eigenvector of h with the largest weight on diabatic level.
Vector adiabatic_state(const Matrix& h, int level);

// Transition probabilities initial_level -> k over config.window, read in the
// instantaneous eigenbasis at both ends (eigenvectors labelled by their
// dominant diabatic level). Diabatic populations at a finite time still carry
// an oscillating tail that decays only like 1/t; the eigenbasis readout does
// not. config.initial_state and sample_times are ignored.
std::vector<double> asymptotic_probabilities(const HamiltonianFn& h, int dim, int initial_level,
                                             const PropagatorConfig& config);
std::vector<double> asymptotic_probabilities(const GridModel& model, int initial_level,
                                             const PropagatorConfig& config);

}  // namespace gaia
