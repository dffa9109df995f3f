#include "gaia/models.hpp"

#include "gaia/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gaia {

namespace {

void require_positive(double x, const char* name) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw Error(ErrorCode::NonPositiveParameter, std::string(name) + " must be > 0");
    }
}

void check_shapes(int n, const std::vector<double>& a, const Matrix& b) {
    if (n < 1) throw Error(ErrorCode::NonPositiveParameter, "N must be >= 1");
    if (static_cast<int>(a.size()) != n) {
        throw Error(ErrorCode::ShapeMismatch, "offset vector must have N entries");
    }
    if (b.rows() != n || b.cols() != n) {
        throw Error(ErrorCode::ShapeMismatch, "coupling block must be N x N");
    }
    for (double x : a) {
        if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite offset");
    }
    for (Eigen::Index r = 0; r < b.rows(); ++r) {
        for (Eigen::Index c = 0; c < b.cols(); ++c) {
            if (!std::isfinite(b(r, c).real()) || !std::isfinite(b(r, c).imag())) {
                throw Error(ErrorCode::InvalidArgument, "non-finite coupling");
            }
        }
    }
}

Matrix two_band_hamiltonian(int n, double eta, const std::vector<double>& a, const Matrix& b,
                            double drive) {
    Matrix h = Matrix::Zero(2 * n, 2 * n);
    const double root_eta = std::sqrt(eta);
    for (int k = 0; k < n; ++k) {
        h(k, k) = eta * (-drive + a[k]);
        h(n + k, n + k) = eta * (drive + a[k]);
    }
    h.topRightCorner(n, n) = root_eta * b;
    h.bottomLeftCorner(n, n) = root_eta * b.adjoint();
    return h;
}

long floor_div2(long q) { return (q >= 0) ? q / 2 : -((-q + 1) / 2); }

}  // namespace

double GridModel::crossing_time(int i, int j) const {
    return (a_[i] - a_[j - n_]) / (2.0 * v_);
}

Matrix GridModel::hamiltonian(double t) const {
    return two_band_hamiltonian(n_, eta_, a_, b_, v_ * t);
}

GridModel build_grid(int n, double v, double eta, std::vector<double> a, Matrix b) {
    check_shapes(n, a, b);
    require_positive(v, "v");
    require_positive(eta, "eta");
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            if (a[i] == a[k]) {
                throw Error(ErrorCode::DuplicateOffset,
                            "offsets a[" + std::to_string(i) + "] and a[" + std::to_string(k) +
                                "] coincide");
            }
        }
    }
    GridModel m;
    m.n_ = n;
    m.v_ = v;
    m.eta_ = eta;
    m.a_ = std::move(a);
    m.b_ = std::move(b);
    return m;
}

double LzsmPair::time_of_root(long q) const {
    const long k = floor_div2(q);
    const double u = (q - 2 * k == 0) ? c + 2.0 * kPi * k : kPi - c + 2.0 * kPi * k;
    return u / v;
}

LzsmPair LzsmModel::pair(int i, int j) const {
    LzsmPair p;
    p.i = i;
    p.j = j;
    p.delta_a = a_[i] - a_[j - n_];
    if (!(std::abs(p.delta_a) < 2.0)) {
        throw Error(ErrorCode::RealityViolation, "pair has no real crossings (|delta a| >= 2)");
    }
    p.c = std::asin(p.delta_a / 2.0);
    p.v = v_;
    p.coupling = coupling(i, j);
    p.abs_lambda = 2.0 * v_ * std::cos(p.c);
    p.kappa = std::norm(p.coupling) / p.abs_lambda;
    p.q0 = (p.c <= 0.0) ? 0 : -1;
    return p;
}

Window LzsmModel::window(int n_crossings) const {
    return {quarter_period(), quarter_period() + n_crossings * half_period()};
}

Matrix LzsmModel::hamiltonian(double t) const {
    return two_band_hamiltonian(n_, eta_, a_, b_, std::sin(v_ * t));
}

LzsmModel build_lzsm(int n, double v, double eta, std::vector<double> a, Matrix b,
                     int n_crossings, double t_ref) {
    check_shapes(n, a, b);
    require_positive(v, "v");
    require_positive(eta, "eta");
    if (n_crossings < 0) {
        throw Error(ErrorCode::NonPositiveParameter, "crossings must be >= 0");
    }
    if (!std::isfinite(t_ref)) throw Error(ErrorCode::InvalidArgument, "non-finite t_ref");

    LzsmModel m;
    m.n_ = n;
    m.v_ = v;
    m.eta_ = eta;
    m.a_ = std::move(a);
    m.b_ = std::move(b);
    m.n_crossings_ = n_crossings;
    m.t_ref_ = t_ref;

    auto coupled = [&](int i, int mm) { return m.b_(i, mm) != Complex(0.0, 0.0); };
    for (int i = 0; i < n; ++i) {
        for (int mm = 0; mm < n; ++mm) {
            if (!coupled(i, mm)) continue;
            if (!(std::abs(m.a_[i] - m.a_[mm]) < 2.0)) {
                throw Error(ErrorCode::RealityViolation,
                            "coupled pair (" + std::to_string(i) + ", " + std::to_string(n + mm) +
                                ") has |delta a| >= 2");
            }
        }
    }
    // Coupled pairs sharing a level with equal delta a cross simultaneously.
    for (int i = 0; i < n; ++i) {
        for (int m1 = 0; m1 < n; ++m1) {
            for (int m2 = m1 + 1; m2 < n; ++m2) {
                if (coupled(i, m1) && coupled(i, m2) && m.a_[m1] == m.a_[m2]) {
                    throw Error(ErrorCode::DuplicateOffset,
                                "coupled pairs sharing level " + std::to_string(i) +
                                    " cross simultaneously");
                }
                if (coupled(m1, i) && coupled(m2, i) && m.a_[m1] == m.a_[m2]) {
                    throw Error(ErrorCode::DuplicateOffset,
                                "coupled pairs sharing level " + std::to_string(n + i) +
                                    " cross simultaneously");
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        for (int mm = 0; mm < n; ++mm) {
            if (coupled(i, mm)) m.pairs_.push_back(m.pair(i, n + mm));
        }
    }
    return m;
}

LzsmModel build_spin_boson(double delta, double gamma, double omega, double v, double eta,
                           int n_boson, int n_crossings) {
    if (n_boson < 1) throw Error(ErrorCode::NonPositiveParameter, "n_boson must be >= 1");
    for (double x : {delta, gamma, omega}) {
        if (!std::isfinite(x) || x < 0.0) {
            throw Error(ErrorCode::NonPositiveParameter, "Delta, gamma, Omega must be >= 0");
        }
    }
    std::vector<double> a(n_boson);
    Matrix b = Matrix::Zero(n_boson, n_boson);
    for (int k = 0; k < n_boson; ++k) {
        a[k] = k * omega;
        b(k, k) = delta;
        if (k + 1 < n_boson) {
            b(k, k + 1) = gamma * std::sqrt(static_cast<double>(k + 1));
            b(k + 1, k) = b(k, k + 1);
        }
    }
    return build_lzsm(n_boson, v, eta, std::move(a), std::move(b), n_crossings, 0.0);
}

}  // namespace gaia

namespace gaia {

std::vector<Crossing> grid_crossings(const GridModel& model) {
    std::vector<Crossing> out;
    const int n = model.n();
    out.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = n; j < 2 * n; ++j) {
            Crossing c;
            c.i = i;
            c.j = j;
            c.time = model.crossing_time(i, j);
            c.lambda = 2.0 * model.v();
            out.push_back(c);
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Crossing& x, const Crossing& y) { return x.time < y.time; });
    return out;
}

}  // namespace gaia
