#include "gaia/gaia_grid.hpp"

#include "gaia/error.hpp"
#include "gaia/special.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaia {

namespace {

void check_pair(const GridModel& model, int i, int j) {
    const int n = model.n();
    if (i < 0 || i >= n || j < n || j >= 2 * n) {
        throw Error(ErrorCode::InvalidArgument,
                    "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") is not a (down, up) pair");
    }
}

double log_abs_gap(double x, double y) {
    const double d = std::abs(x - y);
    if (d == 0.0) throw Error(ErrorCode::DegenerateOffset, "zero offset difference in Theta");
    return std::log(d);
}

}  // namespace

double kappa_grid(const GridModel& model, int i, int j) {
    check_pair(model, i, j);
    return std::norm(model.coupling(i, j)) / (2.0 * model.v());
}

double nonlocal_phase_grid(const GridModel& model, int i, int j) {
    check_pair(model, i, j);
    const int n = model.n();
    double theta = 0.0;
    for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        const double kap = kappa_grid(model, k, j);
        if (kap != 0.0) theta += kap * log_abs_gap(model.offset(k), model.offset(i));
    }
    for (int l = n; l < 2 * n; ++l) {
        if (l == j) continue;
        const double kap = kappa_grid(model, i, l);
        if (kap != 0.0) theta += kap * log_abs_gap(model.offset(l), model.offset(j));
    }
    return theta;
}

PhaseBreakdown theta_grid(const GridModel& model, int i, int j) {
    const double kap = kappa_grid(model, i, j);
    const double v = model.v();
    const double eta = model.eta();
    const double da = model.offset(j) - model.offset(i);
    PhaseBreakdown ph;
    ph.quarter_pi = kPi / 4.0;
    ph.arg_gamma = arg_gamma_one_minus_i(kap);
    ph.arg_coupling = std::arg(model.coupling(i, j));
    ph.dynamical = 0.5 * eta * da * da / (2.0 * v);
    ph.log_scale = (kap == 0.0) ? 0.0 : kap * std::log(2.0 * eta / (4.0 * v));
    ph.nonlocal = -nonlocal_phase_grid(model, i, j);
    return ph;
}

Block2 lz_block(double p, double theta) {
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    const Complex e = std::polar(1.0, theta);
    Block2 u;
    u << sp, -sq * e, sq * std::conj(e), sp;
    return u;
}

Block2 grid_block(const GridModel& model, int i, int j) {
    const double kap = kappa_grid(model, i, j);
    if (kap == 0.0) return Block2::Identity();
    return lz_block(lz_probability(kap), theta_grid(model, i, j).total());
}

Matrix unitary_factor(const GridModel& model, int i, int j) {
    return embed_block(model.dim(), i, j, grid_block(model, i, j));
}

std::vector<Crossing> grid_schedule(const GridModel& model) {
    std::vector<Crossing> cs = grid_crossings(model);
    for (Crossing& c : cs) {
        c.kappa = kappa_grid(model, c.i, c.j);
        c.p = lz_probability(c.kappa);
        c.theta = (c.kappa == 0.0) ? 0.0 : theta_grid(model, c.i, c.j).total();
    }
    return cs;
}

Matrix smatrix_grid(const GridModel& model) {
    Matrix s = Matrix::Identity(model.dim(), model.dim());
    for (const Crossing& c : grid_schedule(model)) {
        if (c.kappa == 0.0) continue;
        apply_block_left(s, c.i, c.j, lz_block(c.p, c.theta));
    }
    return s;
}

double gaia_validity_margin(const GridModel& model) {
    std::vector<double> times;
    double kappa_max = 0.0;
    for (const Crossing& c : grid_crossings(model)) {
        const double kap = kappa_grid(model, c.i, c.j);
        if (kap == 0.0) continue;
        times.push_back(c.time);
        kappa_max = std::max(kappa_max, kap);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    if (times.size() < 2) return std::numeric_limits<double>::infinity();
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < times.size(); ++k) gap = std::min(gap, times[k] - times[k - 1]);
    const double lz_width = std::sqrt(2.0) * std::max(1.0, std::sqrt(kappa_max));
    return 2.0 * std::sqrt(model.eta() * model.v()) * gap / lz_width;
}

}  // namespace gaia
