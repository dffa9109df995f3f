#include "gaia/gaia_lzsm.hpp"

#include "gaia/error.hpp"
#include "gaia/parallel.hpp"
#include "gaia/special.hpp"

#include <algorithm>
#include <cmath>

namespace gaia {

namespace {

constexpr double kSinFloor = 1e-12;

double checked_sin(double x) {
    const double s = std::sin(x);
    if (std::abs(s) < kSinFloor) {
        throw Error(ErrorCode::DegenerateCrossing, "coincident crossings of pairs sharing a level");
    }
    return s;
}

double wrap_residual(double x) { return std::abs(std::remainder(x, 2.0 * kPi)); }

}  // namespace

std::vector<Crossing> CrossingSchedule::crossings() const {
    std::vector<Crossing> out;
    for (const auto& s : slots) out.insert(out.end(), s.crossings.begin(), s.crossings.end());
    return out;
}

double zeta(const LzsmModel& model, int i, int j, long n) {
    const LzsmPair p = model.pair(i, j);
    const double t = p.time(n);
    const double tr = model.t_ref();
    const double v = model.v();
    const double integral =
        (2.0 / v) * (std::cos(v * t) - std::cos(v * tr)) + p.delta_a * (t - tr);
    return p.sign(n) * model.eta() * integral;
}

double nonlocal_phase_lzsm(const LzsmModel& model, int i, int j, long n) {
    const LzsmPair p = model.pair(i, j);
    const double v = model.v();
    const double t = p.time(n);
    const int s = p.sign(n);
    const double lambda = s * p.abs_lambda;

    const double self_sin = checked_sin(v * (t - p.time(n + 1)) / 2.0);
    double theta = 2.0 * p.kappa * std::log(std::abs(v / (2.0 * lambda * self_sin)));

    auto cross = [&](int k, int l) {
        if (!model.coupled(k, l)) return 0.0;
        const LzsmPair q = model.pair(k, l);
        const double num = checked_sin(v * (t - q.positive_root()) / 2.0);
        const double den = checked_sin(v * (t - q.negative_root()) / 2.0);
        return q.kappa * std::log(std::abs(num / den));
    };
    double sum = 0.0;
    for (int k = 0; k < model.n(); ++k) {
        if (k != i) sum += cross(k, j);
    }
    for (int l = model.n(); l < model.dim(); ++l) {
        if (l != j) sum += cross(i, l);
    }
    return theta + s * sum;
}

PhaseBreakdown theta_lzsm_breakdown(const LzsmModel& model, int i, int j, long n) {
    const LzsmPair p = model.pair(i, j);
    const int s = p.sign(n);
    PhaseBreakdown ph;
    ph.quarter_pi = kPi / 4.0;
    ph.arg_gamma = arg_gamma_one_minus_i(p.kappa);
    ph.arg_coupling = s * std::arg(p.coupling);
    ph.dynamical = zeta(model, i, j, n);
    ph.log_scale = (p.kappa == 0.0) ? 0.0 : p.kappa * std::log(model.eta() / p.abs_lambda);
    ph.nonlocal = -nonlocal_phase_lzsm(model, i, j, n);
    return ph;
}

double theta_lzsm(const LzsmModel& model, int i, int j, long n) {
    return theta_lzsm_breakdown(model, i, j, n).total();
}

CrossingSchedule lzsm_schedule(const LzsmModel& model, int n_crossings) {
    if (n_crossings < 0) throw Error(ErrorCode::NonPositiveParameter, "crossings must be >= 0");
    CrossingSchedule sched;
    sched.window = model.window(n_crossings);
    const double t0 = model.quarter_period();
    const double half = model.half_period();
    for (int g = 1; g <= n_crossings; ++g) {
        CrossingSlot slot;
        slot.slot = g;
        slot.t_begin = t0 + (g - 1) * half;
        slot.t_end = t0 + g * half;
        for (const LzsmPair& p : model.pairs()) {
            Crossing c;
            c.i = p.i;
            c.j = p.j;
            c.n = p.ordinal_of_slot(g);
            c.time = p.time(c.n);
            c.lambda = p.sign(c.n) * p.abs_lambda;
            c.kappa = p.kappa;
            c.p = lz_probability(p.kappa);
            c.theta = theta_lzsm(model, p.i, p.j, c.n);
            slot.crossings.push_back(c);
        }
        std::stable_sort(slot.crossings.begin(), slot.crossings.end(),
                         [](const Crossing& x, const Crossing& y) { return x.time < y.time; });
        for (std::size_t a = 0; a < slot.crossings.size(); ++a) {
            for (std::size_t b = a + 1; b < slot.crossings.size(); ++b) {
                const Crossing& x = slot.crossings[a];
                const Crossing& y = slot.crossings[b];
                const bool share = x.i == y.i || x.j == y.j;
                if (share && x.time == y.time) {
                    throw Error(ErrorCode::DegenerateCrossing,
                                "simultaneous crossings share a level");
                }
            }
        }
        sched.slots.push_back(std::move(slot));
    }
    return sched;
}

Block2 lzsm_block(double p, double theta, int sign) {
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    const Complex e = std::polar(1.0, sign * theta);
    Block2 u;
    u << sp, -sign * sq * e, sign * sq * std::conj(e), sp;
    return u;
}

StepUnitary step_unitary(const LzsmModel& model, const Crossing& crossing) {
    StepUnitary st;
    st.crossing = crossing;
    if (!model.coupled(crossing.i, crossing.j)) {
        st.block = Block2::Identity();
        return st;
    }
    const LzsmPair p = model.pair(crossing.i, crossing.j);
    const int sign = p.sign(crossing.n);
    const double theta = theta_lzsm(model, crossing.i, crossing.j, crossing.n);
    st.crossing.time = p.time(crossing.n);
    st.crossing.lambda = sign * p.abs_lambda;
    st.crossing.kappa = p.kappa;
    st.crossing.p = lz_probability(p.kappa);
    st.crossing.theta = theta;
    st.block = lzsm_block(st.crossing.p, theta, sign);
    return st;
}

LzsmPropagation propagate_lzsm(const LzsmModel& model, const Vector& initial, int n_crossings) {
    const int dim = model.dim();
    if (initial.size() != dim) throw Error(ErrorCode::ShapeMismatch, "initial state has wrong size");
    if (std::abs(initial.norm() - 1.0) > 1e-10) {
        throw Error(ErrorCode::InvalidArgument, "initial state must be normalized");
    }
    LzsmPropagation out;
    out.schedule = lzsm_schedule(model, n_crossings);
    out.s = Matrix::Identity(dim, dim);

    auto record = [&](double t) {
        const Vector psi = out.s * initial;
        std::vector<double> probs(dim);
        for (int k = 0; k < dim; ++k) probs[k] = std::norm(psi(k));
        out.trace.times.push_back(t);
        out.trace.probabilities.push_back(std::move(probs));
    };
    record(out.schedule.window.t_initial);
    for (const CrossingSlot& slot : out.schedule.slots) {
        for (const Crossing& c : slot.crossings) {
            const int sign = (c.lambda > 0.0) ? 1 : -1;
            apply_block_left(out.s, c.i, c.j, lzsm_block(c.p, c.theta, sign));
        }
        record(slot.t_end);
    }
    out.trace.propagator = out.s;
    return out;
}

DestructiveReport destructive_condition(const LzsmModel& model, double tolerance) {
    const int n = model.n();
    DestructiveReport rep;
    for (int which = 0; which < 2; ++which) {
        const int j = n + which;
        rep.p[which] = 1.0;
        if (j >= model.dim() || !model.coupled(0, j)) continue;
        const LzsmPair p = model.pair(0, j);
        rep.theta_sums[which] = theta_lzsm(model, 0, j, p.ordinal_of_slot(1)) +
                                theta_lzsm(model, 0, j, p.ordinal_of_slot(2));
        rep.residuals[which] = wrap_residual(rep.theta_sums[which]);
        rep.p[which] = lz_probability(p.kappa);
    }
    const double p1 = rep.p[0];
    const double p2 = rep.p[1];
    rep.s11 = (1.0 - p1) * std::polar(1.0, rep.theta_sums[0]) +
              p1 * (1.0 - p2) * std::polar(1.0, rep.theta_sums[1]) + p1 * p2;
    rep.holds = rep.residuals[0] <= tolerance && rep.residuals[1] <= tolerance;
    return rep;
}

std::vector<double> solve_destructive(const LzsmFamily& family, double eta_lo, double eta_hi,
                                      double tolerance, int scan_points) {
    if (!(eta_hi > eta_lo) || eta_lo <= 0.0) {
        throw Error(ErrorCode::InvalidArgument, "eta range must satisfy 0 < lo < hi");
    }
    scan_points = std::max(scan_points, 3);
    auto objective = [&](double eta) {
        const DestructiveReport r = destructive_condition(family(eta), tolerance);
        return std::max(r.residuals[0], r.residuals[1]);
    };
    const double step = (eta_hi - eta_lo) / (scan_points - 1);
    const std::vector<double> f = parallel_map<double>(
        static_cast<std::size_t>(scan_points),
        [&](std::size_t k) { return objective(eta_lo + step * static_cast<double>(k)); });

    std::vector<double> roots;
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int k = 0; k < scan_points; ++k) {
        const bool left_ok = (k == 0) || f[k] <= f[k - 1];
        const bool right_ok = (k == scan_points - 1) || f[k] < f[k + 1];
        if (!left_ok || !right_ok) continue;
        double a = eta_lo + step * std::max(k - 1, 0);
        double b = eta_lo + step * std::min(k + 1, scan_points - 1);
        double x1 = b - golden * (b - a);
        double x2 = a + golden * (b - a);
        double f1 = objective(x1);
        double f2 = objective(x2);
        while (b - a > 1e-11 * std::max(1.0, std::abs(b))) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = objective(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = objective(x2);
            }
        }
        const double eta = 0.5 * (a + b);
        if (!destructive_condition(family(eta), tolerance).holds) continue;
        if (!roots.empty() && std::abs(roots.back() - eta) < 1e-8) continue;
        roots.push_back(eta);
    }
    return roots;
}

}  // namespace gaia
