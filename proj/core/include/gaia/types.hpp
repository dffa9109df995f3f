#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace gaia {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Block2 = Eigen::Matrix2cd;

inline constexpr double kPi = 3.14159265358979323846;

// max |S^dagger S - 1|
double unitarity_residual(const Matrix& s);

// Multiply rows (i, j) of m by a 2x2 block from the left.
void apply_block_left(Matrix& m, int i, int j, const Block2& block);

// Identity of size dim with a 2x2 block on levels (i, j).
Matrix embed_block(int dim, int i, int j, const Block2& block);

struct Window {
    double t_initial = 0.0;
    double t_final = 0.0;
};

// probabilities[k][level] at times[k]
struct PropagationTrace {
    std::vector<double> times;
    std::vector<std::vector<double>> probabilities;
    Matrix propagator;  // evolution from the first to the last time
};

}  // namespace gaia
