#include "gaia/analysis.hpp"

#include "gaia/error.hpp"
#include "gaia/exact_oracle.hpp"
#include "gaia/gaia_grid.hpp"
#include "gaia/parallel.hpp"
#include "gaia/special.hpp"

#include <algorithm>
#include <cmath>

namespace gaia {

namespace {

void check_s4_shape(const GridModel& model) {
    if (model.n() != 2) throw Error(ErrorCode::ShapeMismatch, "closed form needs N = 2");
    const Matrix& b = model.b();
    if (b(0, 0) != b(1, 1) || b(0, 1) != b(1, 0)) {
        throw Error(ErrorCode::ShapeMismatch, "closed form needs b13 = b24 and b14 = b23");
    }
    if (!(model.a()[0] < model.a()[1])) {
        throw Error(ErrorCode::ShapeMismatch, "closed form needs a_1 < a_2");
    }
}

double max_abs_diff(const std::vector<double>& x, const std::vector<double>& y) {
    double d = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) d = std::max(d, std::abs(x[k] - y[k]));
    return d;
}

}  // namespace

Matrix s4_closed_form(const GridModel& model) {
    check_s4_shape(model);
    // 1-based level labels: 1, 2 down; 3, 4 up.
    struct Amp {
        Complex plus, minus;
        double root_p;
    };
    auto amp = [&](int i1, int j1) {
        const int i = i1 - 1;
        const int j = j1 - 1;
        const double kap = kappa_grid(model, i, j);
        const double p = lz_probability(kap);
        const double theta = (kap == 0.0) ? 0.0 : theta_grid(model, i, j).total();
        const double q = std::sqrt(1.0 - p);
        return Amp{q * std::polar(1.0, theta), -q * std::polar(1.0, -theta), std::sqrt(p)};
    };
    const Amp a13 = amp(1, 3), a14 = amp(1, 4), a23 = amp(2, 3), a24 = amp(2, 4);
    const double s13 = a13.root_p, s14 = a14.root_p, s23 = a23.root_p, s24 = a24.root_p;

    Matrix s(4, 4);
    s(0, 0) = s14 * s13;
    s(0, 1) = 0.0;
    s(0, 2) = -a13.plus;
    s(0, 3) = -s13 * a14.plus;

    s(1, 0) = a24.plus * a14.minus * s23 + a23.plus * a13.minus * s14;
    s(1, 1) = s23 * s24;
    s(1, 2) = -a23.plus * s13;
    s(1, 3) = -a24.plus * s23 * s14 - a23.plus * a13.minus * a14.plus;

    s(2, 0) = -a23.minus * a24.plus * a14.minus - a13.minus * s23 * s14;
    s(2, 1) = -a23.minus * s24;
    s(2, 2) = s23 * s13;
    s(2, 3) = a24.plus * a23.minus * s14 + a13.minus * a14.plus * s23;

    s(3, 0) = -s24 * a14.minus;
    s(3, 1) = -a24.minus;
    s(3, 2) = 0.0;
    s(3, 3) = s24 * s14;
    return s;
}

InterferenceReport p34(const GridModel& model) {
    check_s4_shape(model);
    InterferenceReport r;
    r.kappa_delta = kappa_grid(model, 0, 2);
    r.kappa_gamma = kappa_grid(model, 0, 3);
    const double pd = lz_probability(r.kappa_delta);
    const double pg = lz_probability(r.kappa_gamma);
    // p14 = p23 = pg, p13 = p24 = pd
    r.p_a = pg * (1.0 - pd) * (1.0 - pg);
    r.p_b = (1.0 - pg) * (1.0 - pd) * pg;
    const double a = model.a()[1] - model.a()[0];
    const double scale = model.eta() * a * a / (2.0 * model.v());
    r.phase = 2.0 * (arg_gamma_one_minus_i(r.kappa_gamma) - arg_gamma_one_minus_i(r.kappa_delta)) +
              scale + 2.0 * (r.kappa_gamma - r.kappa_delta) * std::log(scale);
    r.p34 = std::clamp(r.p_a + r.p_b + 2.0 * std::sqrt(r.p_a * r.p_b) * std::cos(r.phase), 0.0, 1.0);
    return r;
}

GridModel S4Family::operator()(double x) const {
    Matrix b(2, 2);
    b << delta, gamma, gamma, delta;
    const double eta = v * x * x / (spacing * spacing);
    return build_grid(2, v, eta, {0.0, spacing}, b);
}

std::vector<double> p34_zeros(const GridFamily& family, const Sweep& sweep) {
    std::vector<double> zeros;
    if (sweep.count < 2) return zeros;
    // sin((phase - pi) / 2) has a simple root wherever cos(phase) = -1.
    auto g = [&](double x) {
        const InterferenceReport r = p34(family(x));
        return std::make_pair(std::sin(0.5 * (r.phase - kPi)), r);
    };
    auto balanced = [](const InterferenceReport& r) {
        return std::abs(r.p_a - r.p_b) <= 1e-12 * std::max(r.p_a, r.p_b);
    };
    double x_prev = sweep.at(0);
    auto [g_prev, r_prev] = g(x_prev);
    for (int k = 1; k < sweep.count; ++k) {
        const double x = sweep.at(k);
        auto [g_cur, r_cur] = g(x);
        if (g_prev == 0.0 && balanced(r_prev)) {
            zeros.push_back(x_prev);
        } else if (g_prev * g_cur < 0.0) {
            double lo = x_prev, hi = x;
            double g_lo = g_prev;
            while (hi - lo > 1e-10 * std::max(1.0, std::abs(hi))) {
                const double mid = 0.5 * (lo + hi);
                const double g_mid = g(mid).first;
                if ((g_mid < 0.0) == (g_lo < 0.0)) {
                    lo = mid;
                    g_lo = g_mid;
                } else {
                    hi = mid;
                }
            }
            const double root = 0.5 * (lo + hi);
            if (balanced(g(root).second)) zeros.push_back(root);
        }
        x_prev = x;
        g_prev = g_cur;
        r_prev = r_cur;
    }
    return zeros;
}

std::vector<CompareRow> compare_gaia_oracle(const GridFamily& family, const Sweep& sweep,
                                            int initial_level, const OracleOptions& options) {
    return parallel_map<CompareRow>(static_cast<std::size_t>(std::max(sweep.count, 0)),
                                    [&](std::size_t k) {
        CompareRow row;
        row.parameter = sweep.at(static_cast<int>(k));
        const GridModel model = family(row.parameter);
        const int dim = model.dim();
        if (initial_level < 0 || initial_level >= dim) {
            throw Error(ErrorCode::InvalidArgument, "initial level out of range");
        }
        row.margin = gaia_validity_margin(model);
        const Matrix s = smatrix_grid(model);
        for (int l = 0; l < dim; ++l) row.p_gaia.push_back(std::norm(s(l, initial_level)));
        PropagatorConfig cfg;
        cfg.window = options.window.value_or(default_window(model));
        cfg.tolerance = options.tolerance;
        cfg.max_steps = options.max_steps;
        try {
            row.p_exact = asymptotic_probabilities(model, initial_level, cfg);
            row.max_diff = max_abs_diff(row.p_gaia, row.p_exact);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::StepLimitExceeded) throw;
            row.ok = false;
            row.error = e.what();
            row.p_exact.assign(dim, std::nan(""));
            row.max_diff = std::nan("");
        }
        return row;
    });
}

std::vector<TraceCompareRow> compare_lzsm_oracle(const LzsmModel& model, int n_crossings,
                                                 int initial_level, const OracleOptions& options) {
    const int dim = model.dim();
    if (initial_level < 0 || initial_level >= dim) {
        throw Error(ErrorCode::InvalidArgument, "initial level out of range");
    }
    const LzsmPropagation g = propagate_lzsm(model, Vector::Unit(dim, initial_level), n_crossings);
    PropagatorConfig cfg;
    cfg.window = g.schedule.window;
    cfg.tolerance = options.tolerance;
    cfg.max_steps = options.max_steps;
    cfg.sample_times = g.trace.times;
    cfg.initial_state = adiabatic_state(model.hamiltonian(cfg.window.t_initial), initial_level);
    const PropagationTrace e = propagate_exact(model, cfg);

    std::vector<TraceCompareRow> rows;
    for (std::size_t k = 0; k < g.trace.times.size(); ++k) {
        TraceCompareRow row;
        row.time = g.trace.times[k];
        row.p_gaia = g.trace.probabilities[k];
        row.p_exact = e.probabilities[std::min(k, e.probabilities.size() - 1)];
        row.max_diff = max_abs_diff(row.p_gaia, row.p_exact);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace gaia
