#include "gaia/special.hpp"

#include "gaia/error.hpp"

#include <array>
#include <cmath>

namespace gaia {

namespace {

// B_{2k} / (2k (2k - 1)), k = 1..8
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,      -1.0 / 360.0,    1.0 / 1260.0,   -1.0 / 1680.0,
    1.0 / 1188.0,    -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
};

constexpr double kShiftRadius = 15.0;

}  // namespace

Complex log_gamma(Complex z) {
    if (!(z.real() > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "log_gamma requires Re z > 0");
    }
    // Recurrence up to |w| >= 15, where the truncated Stirling series is
    // accurate to ~1e-16.
    Complex shift_log(0.0, 0.0);
    Complex w = z;
    if (std::abs(w) < kShiftRadius) {
        const int n = static_cast<int>(std::ceil(kShiftRadius - w.real()));
        for (int k = 0; k < n; ++k) {
            shift_log += std::log(w);
            w += 1.0;
        }
    }
    const Complex inv = 1.0 / w;
    const Complex inv2 = inv * inv;
    Complex series(0.0, 0.0);
    Complex power = inv;
    for (double c : kStirling) {
        series += c * power;
        power *= inv2;
    }
    const Complex stirling =
        (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * kPi) + series;
    return stirling - shift_log;
}

double arg_gamma_one_minus_i(double kappa) {
    if (kappa == 0.0) return 0.0;
    return log_gamma(Complex(1.0, -kappa)).imag();
}

double lz_probability(double kappa) {
    return std::exp(-2.0 * kPi * kappa);
}

}  // namespace gaia
