#include "gaia/legacy_wkb.hpp"

#include "gaia/error.hpp"
#include "gaia/exact_oracle.hpp"
#include "gaia/gaia_grid.hpp"
#include "gaia/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gaia {

namespace {

double p_pair(const GridModel& model, int i, int j) {
    return lz_probability(kappa_grid(model, i, j));
}

double ladder_weight_index(const GridModel& model, int i, int j) {
    double y = 1.0;
    for (int k = 0; k < i; ++k) y *= std::sqrt(p_pair(model, k, j));
    for (int l = model.n(); l < j; ++l) y /= std::sqrt(p_pair(model, i, l));
    return y;
}

double ladder_weight_time(const GridModel& model, int i, int j) {
    const double t = model.crossing_time(i, j);
    double y = 1.0;
    for (int k = 0; k < model.n(); ++k) {
        if (k != i && model.crossing_time(k, j) < t) y *= std::sqrt(p_pair(model, k, j));
    }
    for (int l = model.n(); l < model.dim(); ++l) {
        if (l != j && model.crossing_time(i, l) > t) y /= std::sqrt(p_pair(model, i, l));
    }
    return y;
}

Eigen::VectorXd ladder_minus(const GridModel& model, int k) {
    // 1-based: down i -> prod_{N < l <= i + k} p_{il}^{-1/2};
    //          up j   -> prod_{l < j - k} p_{lj}^{-1/2}.
    const int n = model.n();
    Eigen::VectorXd d = Eigen::VectorXd::Ones(2 * n);
    for (int i = 1; i <= n; ++i) {
        for (int l = n + 1; l <= std::min(i + k, 2 * n); ++l) {
            d(i - 1) /= std::sqrt(p_pair(model, i - 1, l - 1));
        }
    }
    for (int j = n + 1; j <= 2 * n; ++j) {
        for (int l = 1; l < j - k && l <= n; ++l) {
            d(j - 1) /= std::sqrt(p_pair(model, l - 1, j - 1));
        }
    }
    return d;
}

}  // namespace

Matrix ConnectionFactor::matrix(int dim) const {
    Matrix m = Matrix::Identity(dim, dim);
    m(i, i) = p;
    m(i, j) = -alpha_plus;
    m(j, i) = -alpha_minus;
    return m;
}

ConnectionFactor m_factor_weighted(const GridModel& model, int i, int j, double y) {
    const double kap = kappa_grid(model, i, j);
    ConnectionFactor f;
    f.i = i;
    f.j = j;
    f.p = lz_probability(kap);
    if (kap == 0.0) {
        f.beta = 1.0;
        f.alpha_plus = 0.0;
        f.alpha_minus = 0.0;
        return f;
    }
    const double v = model.v();
    const double eta = model.eta();
    const double da = model.offset(j) - model.offset(i);
    const Complex ikap(0.0, kap);
    double log_sum = 0.0;
    for (int k = 0; k < model.n(); ++k) {
        if (k == i) continue;
        const double d = std::abs(model.offset(k) - model.offset(i));
        if (d == 0.0) throw Error(ErrorCode::DegenerateOffset, "zero offset difference in beta");
        log_sum += kappa_grid(model, k, j) * std::log(d);
    }
    for (int l = model.n(); l < model.dim(); ++l) {
        if (l == j) continue;
        const double d = std::abs(model.offset(l) - model.offset(j));
        if (d == 0.0) throw Error(ErrorCode::DegenerateOffset, "zero offset difference in beta");
        log_sum += kappa_grid(model, i, l) * std::log(d);
    }
    f.beta = std::pow(Complex(4.0 * v, 0.0), -ikap) *
             std::exp(Complex(0.0, 0.5 * eta * da * da / (2.0 * v))) * y *
             std::exp(Complex(0.0, -log_sum));
    const double local =
        kPi / 4.0 + arg_gamma_one_minus_i(kap) + std::arg(model.coupling(i, j));
    const Complex scale = std::pow(Complex(2.0 * eta, 0.0), ikap);
    const double amp = std::sqrt(1.0 - f.p);
    f.alpha_plus = amp * std::polar(1.0, local) * scale * f.beta;
    f.alpha_minus = -amp * std::polar(1.0, -local) / scale / f.beta;
    return f;
}

ConnectionFactor m_factor(const GridModel& model, int i, int j) {
    return m_factor_weighted(model, i, j, ladder_weight_index(model, i, j));
}

NormalizationLadder normalization_ladder(const GridModel& model) {
    const int n = model.n();
    NormalizationLadder lad;
    lad.plus = Eigen::VectorXd::Ones(2 * n);
    for (int j = n; j < 2 * n; ++j) {
        for (int k = 0; k < n; ++k) lad.plus(j) /= std::sqrt(p_pair(model, k, j));
    }
    for (int k = 0; k <= 2 * n - 1; ++k) lad.minus.push_back(ladder_minus(model, k));
    return lad;
}

double verify_appendix_identity(const GridModel& model, int k) {
    const int n = model.n();
    if (k < 1 || k > 2 * n - 1) {
        throw Error(ErrorCode::InvalidArgument, "group index must be in 1..2N-1");
    }
    const int dim = model.dim();
    Matrix m_k = Matrix::Identity(dim, dim);
    Matrix u_k = Matrix::Identity(dim, dim);
    for (int i = 0; i < n; ++i) {
        const int j = i + k;
        if (j < n || j >= dim) continue;
        m_k = m_k * m_factor(model, i, j).matrix(dim);
        u_k = u_k * unitary_factor(model, i, j);
    }
    const Eigen::VectorXd nk = ladder_minus(model, k);
    const Eigen::VectorXd nk1 = ladder_minus(model, k - 1);
    const Matrix lhs = m_k * nk.cast<Complex>().asDiagonal();
    const Matrix rhs = nk1.cast<Complex>().asDiagonal() * u_k;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

LegacyResult smatrix_legacy(const GridModel& model) {
    const int n = model.n();
    const int dim = model.dim();
    LegacyResult res;

    Eigen::VectorXd n_minus = Eigen::VectorXd::Ones(dim);
    Eigen::VectorXd n_plus = Eigen::VectorXd::Ones(dim);
    for (int i = 0; i < n; ++i) {
        for (int j = n; j < dim; ++j) {
            const double p = p_pair(model, i, j);
            res.min_p = std::min(res.min_p, p);
            n_minus(i) /= std::sqrt(p);
            n_plus(j) /= std::sqrt(p);
        }
    }
    if (res.min_p < kLegacyConditioningFloor) {
        res.ill_conditioned = true;
        std::ostringstream os;
        os << "ConditioningWarning: min p = " << res.min_p
           << "; normalization factors p^(-1/2) amplify rounding";
        res.warnings.push_back(os.str());
    }

    Matrix s = n_minus.cast<Complex>().asDiagonal();
    for (const Crossing& c : grid_crossings(model)) {
        if (kappa_grid(model, c.i, c.j) == 0.0) continue;
        s = m_factor_weighted(model, c.i, c.j, ladder_weight_time(model, c.i, c.j)).matrix(dim) * s;
    }
    res.s = n_plus.cwiseInverse().cast<Complex>().asDiagonal() * s;
    return res;
}

// --- adiabatic impulse approximation ---------------------------------------

double aia_phase(double kappa) {
    const double log_term = (kappa == 0.0) ? 0.0 : kappa * (std::log(kappa) - 1.0);
    return kPi / 4.0 + log_term + arg_gamma_one_minus_i(kappa);
}

namespace {

double equidistant_spacing(const GridModel& model) {
    const auto& a = model.a();
    const int n = model.n();
    if (n == 1) return 1.0;
    const double step = a[1] - a[0];
    const double scale = std::max(std::abs(a.front()), std::abs(a.back())) + std::abs(step);
    for (int k = 1; k < n; ++k) {
        if (!(step > 0.0) || std::abs(a[k] - a[0] - k * step) > 1e-12 * scale) {
            throw Error(ErrorCode::ShapeMismatch, "AIA needs equidistant ascending offsets");
        }
    }
    return step;
}

}  // namespace

AiaPath aia_path(const GridModel& model, const Window& window) {
    const int n = model.n();
    const int dim = model.dim();
    const double step = equidistant_spacing(model);
    const double v = model.v();

    AiaPath path;
    path.boundaries.push_back(window.t_final);
    for (int k = 1; k <= 2 * n - 1; ++k) path.boundaries.push_back((n - k) * step / (2.0 * v));
    path.boundaries.push_back(window.t_initial);
    if (!(window.t_final > path.boundaries[1]) || !(window.t_initial < path.boundaries[2 * n - 1])) {
        throw Error(ErrorCode::InvalidArgument, "AIA window must enclose all crossings");
    }

    for (int k = 1; k <= 2 * n; ++k) {
        const double mid = 0.5 * (path.boundaries[k] + path.boundaries[k - 1]);
        std::vector<double> diag(dim);
        for (int l = 0; l < dim; ++l) {
            diag[l] = model.offset(l) + (model.is_down(l) ? -v * mid : v * mid);
        }
        std::vector<int> order(dim);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });
        for (int r = 1; r < dim; ++r) {
            if (!(diag[order[r]] > diag[order[r - 1]])) {
                throw Error(ErrorCode::BranchTrackingFailure,
                            "diabatic energies tie inside an AIA interval");
            }
        }
        std::vector<int> branch(dim);
        for (int r = 0; r < dim; ++r) branch[order[r]] = r;
        path.branch.push_back(std::move(branch));
    }
    return path;
}

Matrix smatrix_aia(const GridModel& model, double quadrature_tol, std::optional<Window> window) {
    const int n = model.n();
    const int dim = model.dim();
    const Window w = window.value_or(default_window(model));
    const AiaPath path = aia_path(model, w);

    auto eigenvalue = [&](double t, int r) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(model.hamiltonian(t), Eigen::EigenvaluesOnly);
        const Eigen::VectorXd& e = es.eigenvalues();
        const double scale = std::max(1.0, e.cwiseAbs().maxCoeff());
        for (int q = 1; q < dim; ++q) {
            if (e(q) - e(q - 1) <= 1e-14 * scale && (q == r || q - 1 == r)) {
                throw Error(ErrorCode::BranchTrackingFailure,
                            "degenerate eigenvalues at an AIA quadrature node");
            }
        }
        return e(r);
    };

    auto k_factor = [&](int k) {
        const double lo = path.boundaries[k];
        const double hi = path.boundaries[k - 1];
        Vector d(dim);
        for (int l = 0; l < dim; ++l) {
            const int r = path.branch[k - 1][l];
            const double phase = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                [&](double t) { return eigenvalue(t, r); }, lo, hi, 15, quadrature_tol);
            d(l) = std::polar(1.0, -phase);
        }
        return d;
    };

    // S = K_1 G_1 K_2 ... G_{2N-1} K_{2N}, built right to left.
    Matrix s = Matrix::Identity(dim, dim);
    s = k_factor(2 * n).asDiagonal() * s;
    for (int k = 2 * n - 1; k >= 1; --k) {
        for (int i = 0; i < n; ++i) {
            const int j = i + k;
            if (j < n || j >= dim) continue;
            const double kap = kappa_grid(model, i, j);
            if (kap == 0.0) continue;
            apply_block_left(s, i, j, lz_block(lz_probability(kap), aia_phase(kap)));
        }
        s = k_factor(k).asDiagonal() * s;
    }
    return s;
}

}  // namespace gaia
