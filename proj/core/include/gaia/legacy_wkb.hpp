#pragma once

#include "gaia/models.hpp"
#include "gaia/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaia {

// Non-unitary connection matrix of one crossing: identity except
// (i,i) = p, (i,j) = -alpha+, (j,i) = -alpha-, (j,j) = 1.
struct ConnectionFactor {
    int i = 0;
    int j = 0;
    double p = 1.0;
    Complex beta;
    Complex alpha_plus;
    Complex alpha_minus;

    Matrix matrix(int dim) const;
};

// beta carries the ladder weight Y_{ij} = prod_{k<i} p_{kj}^{1/2} prod_{N<=l<j} p_{il}^{-1/2}.
ConnectionFactor m_factor(const GridModel& model, int i, int j);

// Same factor with an explicit ladder weight y in place of Y_{ij}.
ConnectionFactor m_factor_weighted(const GridModel& model, int i, int j, double y);

// Diagonals of N^(+) and N_k^(-), k = 0..2N-1 (minus[2N-1] is N^(-)).
struct NormalizationLadder {
    Eigen::VectorXd plus;
    std::vector<Eigen::VectorXd> minus;
};

NormalizationLadder normalization_ladder(const GridModel& model);

// max |M_k N_k^(-) - N_{k-1}^(-) U_k| for group k = j - i, 1 <= k <= 2N-1.
double verify_appendix_identity(const GridModel& model, int k);

struct LegacyResult {
    Matrix s;
    double min_p = 1.0;
    bool ill_conditioned = false;  // some p < kLegacyConditioningFloor
    std::vector<std::string> warnings;
};

inline constexpr double kLegacyConditioningFloor = 1e-6;

// (N^(+))^{-1} M_last ... M_first N^(-). Factors are applied in crossing-time
// order and each ladder weight counts the crossings already passed, which
// reduces to the j - i grouping for ascending offsets.
LegacyResult smatrix_legacy(const GridModel& model);

// Eigenvalue branch labels of the AIA product for a_n = a_1 + (n-1) a, a > 0.
// boundaries = t_0 = t_F > t_1 > ... > t_{2N-1} > t_{2N} = t_I;
// interval k (1..2N) is [t_k, t_{k-1}] and branch[k-1][level] is the index of
// the ascending instantaneous eigenvalue followed by that diabatic level.
struct AiaPath {
    std::vector<double> boundaries;
    std::vector<std::vector<int>> branch;
};

AiaPath aia_path(const GridModel& model, const Window& window);

// pi/4 + kappa (ln kappa - 1) + arg Gamma(1 - i kappa)
double aia_phase(double kappa);

// K_1 G_1 K_2 ... G_{2N-1} K_{2N}; window defaults to default_window(model).
Matrix smatrix_aia(const GridModel& model, double quadrature_tol = 1e-12,
                   std::optional<Window> window = std::nullopt);

}  // namespace gaia
