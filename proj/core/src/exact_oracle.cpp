#include "gaia/exact_oracle.hpp"

#include "gaia/error.hpp"
#include "gaia/gaia_grid.hpp"

#include <algorithm>
#include <cmath>

namespace gaia {

namespace {

Matrix frozen_step(const HamiltonianFn& h, double t, double dt) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h(t + 0.5 * dt));
    const Matrix& v = es.eigenvectors();
    Vector phases(v.cols());
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
        phases(k) = std::polar(1.0, -dt * es.eigenvalues()(k));
    }
    return v * phases.asDiagonal() * v.adjoint();
}

void check_hermitian(const Matrix& m) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::NonHermitianInput, "Hamiltonian is not Hermitian");
    }
}

double default_initial_step(const HamiltonianFn& h, double t) {
    const double norm = h(t).cwiseAbs().rowwise().sum().maxCoeff();
    return 0.01 / std::max(norm, 1.0);
}

// Integrates from t0 to t1 (either direction), multiplying into u.
// h_step carries the adaptive step size across calls.
void advance(const HamiltonianFn& h, double t0, double t1, double tol, long max_steps,
             long& steps, double& h_step, Matrix& u) {
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::abs(t1 - t0);
    const double h_min = 1e-15 * std::max(1.0, std::max(std::abs(t0), std::abs(t1)));
    double done = 0.0;
    while (done < span) {
        double hs = std::min(h_step, span - done);
        const bool last = (hs == span - done);
        const double t = t0 + dir * done;
        const Matrix full = frozen_step(h, t, dir * hs);
        const Matrix half1 = frozen_step(h, t, 0.5 * dir * hs);
        const Matrix half2 = frozen_step(h, t + 0.5 * dir * hs, 0.5 * dir * hs);
        const Matrix fine = half2 * half1;
        const double err = (fine - full).cwiseAbs().maxCoeff();
        double factor = (err > 0.0) ? 0.9 * std::cbrt(tol / err) : 2.0;
        factor = std::clamp(factor, 0.2, 2.0);
        if (err <= tol || hs <= h_min) {
            u = fine * u;
            done = last ? span : done + hs;
            if (++steps > max_steps) {
                throw Error(ErrorCode::StepLimitExceeded, "exact propagator exceeded step limit");
            }
            if (!last || factor < 1.0) h_step = hs * factor;
        } else {
            h_step = hs * factor;
        }
    }
}

}  // namespace

Matrix evolution_operator(const HamiltonianFn& h, int dim, double t_from, double t_to,
                          double tolerance, long max_steps, double initial_step) {
    check_hermitian(h(t_from));
    Matrix u = Matrix::Identity(dim, dim);
    long steps = 0;
    double h_step = (initial_step > 0.0) ? initial_step : default_initial_step(h, t_from);
    advance(h, t_from, t_to, tolerance, max_steps, steps, h_step, u);
    return u;
}

PropagationTrace propagate_exact(const HamiltonianFn& h, int dim, const PropagatorConfig& config) {
    if (!(config.tolerance > 0.0)) {
        throw Error(ErrorCode::NonPositiveParameter, "step tolerance must be > 0");
    }
    const double t0 = config.window.t_initial;
    const double t1 = config.window.t_final;
    if (!std::isfinite(t0) || !std::isfinite(t1)) {
        throw Error(ErrorCode::InvalidArgument, "window must be finite");
    }
    check_hermitian(h(t0));

    Vector psi0 = config.initial_state;
    if (psi0.size() == 0) {
        psi0 = Vector::Zero(dim);
        psi0(0) = 1.0;
    }
    if (psi0.size() != dim) throw Error(ErrorCode::ShapeMismatch, "initial state has wrong size");

    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    std::vector<double> stops;
    for (double s : config.sample_times) {
        if (dir * (s - t0) > 0.0 && dir * (t1 - s) > 0.0) stops.push_back(s);
    }
    std::sort(stops.begin(), stops.end(), [dir](double x, double y) { return dir * x < dir * y; });
    stops.erase(std::unique(stops.begin(), stops.end()), stops.end());
    stops.push_back(t1);

    PropagationTrace trace;
    auto record = [&](double t, const Matrix& u) {
        const Vector psi = u * psi0;
        std::vector<double> probs(dim);
        for (int k = 0; k < dim; ++k) probs[k] = std::norm(psi(k));
        trace.times.push_back(t);
        trace.probabilities.push_back(std::move(probs));
    };

    Matrix u = Matrix::Identity(dim, dim);
    record(t0, u);
    long steps = 0;
    double h_step = (config.initial_step > 0.0) ? config.initial_step : default_initial_step(h, t0);
    double t = t0;
    for (double s : stops) {
        if (s != t) advance(h, t, s, config.tolerance, config.max_steps, steps, h_step, u);
        t = s;
        record(t, u);
    }
    trace.propagator = u;
    return trace;
}

PropagationTrace propagate_exact(const GridModel& model, PropagatorConfig config) {
    const HamiltonianFn h = [&model](double t) { return model.hamiltonian(t); };
    return propagate_exact(h, model.dim(), config);
}

PropagationTrace propagate_exact(const LzsmModel& model, PropagatorConfig config) {
    const HamiltonianFn h = [&model](double t) { return model.hamiltonian(t); };
    return propagate_exact(h, model.dim(), config);
}

Window default_window(const GridModel& model) {
    const auto cs = grid_crossings(model);
    double kappa_max = 0.0;
    for (const Crossing& c : cs) kappa_max = std::max(kappa_max, kappa_grid(model, c.i, c.j));
    const double margin =
        5.0 * 20.0 * std::max(1.0, std::sqrt(kappa_max)) / std::sqrt(model.eta() * model.v());
    return {cs.front().time - margin, cs.back().time + margin};
}

Window default_window(const LzsmModel& model, int n_crossings) {
    return model.window(n_crossings);
}

Vector adiabatic_state(const Matrix& h, int level) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    const Matrix& v = es.eigenvectors();
    Eigen::Index best = 0;
    v.row(level).cwiseAbs2().maxCoeff(&best);
    return v.col(best);
}

std::vector<double> asymptotic_probabilities(const HamiltonianFn& h, int dim, int initial_level,
                                             const PropagatorConfig& config) {
    if (initial_level < 0 || initial_level >= dim) {
        throw Error(ErrorCode::InvalidArgument, "initial level out of range");
    }
    PropagatorConfig cfg = config;
    cfg.sample_times.clear();
    cfg.initial_state = adiabatic_state(h(cfg.window.t_initial), initial_level);
    const PropagationTrace tr = propagate_exact(h, dim, cfg);
    const Vector psi = tr.propagator * cfg.initial_state;
    const Matrix h_final = h(cfg.window.t_final);
    std::vector<double> probs(dim);
    for (int k = 0; k < dim; ++k) probs[k] = std::norm(adiabatic_state(h_final, k).dot(psi));
    return probs;
}

std::vector<double> asymptotic_probabilities(const GridModel& model, int initial_level,
                                             const PropagatorConfig& config) {
    const HamiltonianFn h = [&model](double t) { return model.hamiltonian(t); };
    return asymptotic_probabilities(h, model.dim(), initial_level, config);
}

}  // namespace gaia
