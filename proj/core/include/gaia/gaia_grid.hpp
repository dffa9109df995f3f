#pragma once

#include "gaia/models.hpp"
#include "gaia/types.hpp"

#include <limits>

namespace gaia {

// Ratio below which neighbouring LZ transitions overlap (red region of the
// validity plot).
inline constexpr double kValidityThreshold = 10.0;

struct PhaseBreakdown {
    double quarter_pi = 0.0;
    double arg_gamma = 0.0;
    double arg_coupling = 0.0;
    double dynamical = 0.0;
    double log_scale = 0.0;
    double nonlocal = 0.0;  // -Theta

    double total() const {
        return quarter_pi + arg_gamma + arg_coupling + dynamical + log_scale + nonlocal;
    }
};

// i is a down level (0..N-1), j an up level (N..2N-1).
double kappa_grid(const GridModel& model, int i, int j);
PhaseBreakdown theta_grid(const GridModel& model, int i, int j);
// Non-local phase Theta_{ij} (enters theta with a minus sign).
double nonlocal_phase_grid(const GridModel& model, int i, int j);

// [[sqrt p, -sqrt(1-p) e^{i theta}], [sqrt(1-p) e^{-i theta}, sqrt p]]
Block2 lz_block(double p, double theta);
Block2 grid_block(const GridModel& model, int i, int j);
Matrix unitary_factor(const GridModel& model, int i, int j);

// Product of all factors, earliest crossing rightmost.
Matrix smatrix_grid(const GridModel& model);

// Crossings with kappa, p and theta filled in, time ordered.
std::vector<Crossing> grid_schedule(const GridModel& model);

// Smallest inter-crossing time over the LZ transition time, both in units of
// 1/sqrt(eta v); +inf with fewer than two distinct crossing times.
double gaia_validity_margin(const GridModel& model);

}  // namespace gaia
