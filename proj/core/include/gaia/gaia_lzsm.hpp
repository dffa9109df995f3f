#pragma once

#include "gaia/gaia_grid.hpp"
#include "gaia/models.hpp"
#include "gaia/types.hpp"

#include <array>
#include <functional>
#include <vector>

namespace gaia {

// Half drive period (pi/(2v) + (g-1) pi/v, pi/(2v) + g pi/v]; every coupled
// pair crosses exactly once inside each slot.
struct CrossingSlot {
    int slot = 0;
    double t_begin = 0.0;
    double t_end = 0.0;
    std::vector<Crossing> crossings;  // time ordered
};

struct CrossingSchedule {
    Window window;
    std::vector<CrossingSlot> slots;

    std::vector<Crossing> crossings() const;
};

CrossingSchedule lzsm_schedule(const LzsmModel& model, int n_crossings);

// n is the crossing ordinal of pair (i, j); ordinal 0 is the last crossing at
// or before t = 0.
double zeta(const LzsmModel& model, int i, int j, long n);
double nonlocal_phase_lzsm(const LzsmModel& model, int i, int j, long n);
PhaseBreakdown theta_lzsm_breakdown(const LzsmModel& model, int i, int j, long n);
double theta_lzsm(const LzsmModel& model, int i, int j, long n);

struct StepUnitary {
    Crossing crossing;
    Block2 block;  // identity when the pair is uncoupled

    Matrix matrix(int dim) const { return embed_block(dim, crossing.i, crossing.j, block); }
};

// [[sqrt p, -s sqrt(1-p) e^{i s theta}], [s sqrt(1-p) e^{-i s theta}, sqrt p]], s = sgn(lambda)
Block2 lzsm_block(double p, double theta, int sign);
StepUnitary step_unitary(const LzsmModel& model, const Crossing& crossing);

struct LzsmPropagation {
    PropagationTrace trace;  // initial time, then every slot boundary
    Matrix s;
    CrossingSchedule schedule;
};

LzsmPropagation propagate_lzsm(const LzsmModel& model, const Vector& initial, int n_crossings);

inline constexpr double kDestructiveTolerance = 0.15;

struct DestructiveReport {
    std::array<double, 2> theta_sums{};  // pairs (0, N) and (0, N+1), slots 1 and 2
    std::array<double, 2> residuals{};   // distance to the nearest multiple of 2 pi
    std::array<double, 2> p{};
    Complex s11;
    bool holds = false;
};

DestructiveReport destructive_condition(const LzsmModel& model,
                                        double tolerance = kDestructiveTolerance);

using LzsmFamily = std::function<LzsmModel(double eta)>;

// eta values in [eta_lo, eta_hi] where both residuals are <= tolerance, located
// by a uniform scan of max(r1, r2) followed by golden-section refinement.
std::vector<double> solve_destructive(const LzsmFamily& family, double eta_lo, double eta_hi,
                                      double tolerance = kDestructiveTolerance,
                                      int scan_points = 1200);

}  // namespace gaia
