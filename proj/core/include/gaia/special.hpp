#pragma once

#include "gaia/types.hpp"

namespace gaia {

// Principal-branch-continuous log Gamma for Re z > 0.
Complex log_gamma(Complex z);

// arg Gamma(1 - i kappa), continuous in kappa, zero at kappa = 0.
double arg_gamma_one_minus_i(double kappa);

// exp(-2 pi kappa)
double lz_probability(double kappa);

}  // namespace gaia
