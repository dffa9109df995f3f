#include "gaia/types.hpp"

namespace gaia {

double unitarity_residual(const Matrix& s) {
    const Matrix r = s.adjoint() * s - Matrix::Identity(s.cols(), s.cols());
    return r.cwiseAbs().maxCoeff();
}

void apply_block_left(Matrix& m, int i, int j, const Block2& block) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const Complex x = m(i, c);
        const Complex y = m(j, c);
        m(i, c) = block(0, 0) * x + block(0, 1) * y;
        m(j, c) = block(1, 0) * x + block(1, 1) * y;
    }
}

Matrix embed_block(int dim, int i, int j, const Block2& block) {
    Matrix m = Matrix::Identity(dim, dim);
    m(i, i) = block(0, 0);
    m(i, j) = block(0, 1);
    m(j, i) = block(1, 0);
    m(j, j) = block(1, 1);
    return m;
}

}  // namespace gaia
