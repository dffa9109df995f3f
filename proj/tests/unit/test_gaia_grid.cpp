#include <doctest.h>

#include <gaia/analysis.hpp>
#include <gaia/gaia_grid.hpp>
#include <gaia/special.hpp>

#include <cmath>
#include <limits>

#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gaia;

TEST_SUITE("grid") {
    TEST_CASE("kappa and p") {
        Matrix b(1, 1);
        b(0, 0) = 0.5;
        const GridModel m = build_grid(1, 1.0, 10.0, {0.0}, b);
        CHECK(kappa_grid(m, 0, 1) == doctest::Approx(0.125));
        CHECK(lz_probability(kappa_grid(m, 0, 1)) == doctest::Approx(0.45594).epsilon(1e-4));
        b(0, 0) = 1.0;
        const GridModel m2 = build_grid(1, 1.0, 10.0, {0.0}, b);
        CHECK(lz_probability(kappa_grid(m2, 0, 1)) == doctest::Approx(0.043214).epsilon(1e-4));
    }

    TEST_CASE("single crossing: phase terms and transition probability") {
        Matrix b(1, 1);
        b(0, 0) = std::polar(0.7, 0.9);
        const double v = 1.5, eta = 40.0;
        const GridModel m = build_grid(1, v, eta, {0.3}, b);
        const double kap = std::norm(b(0, 0)) / (2 * v);
        const PhaseBreakdown ph = theta_grid(m, 0, 1);
        CHECK(ph.nonlocal == 0.0);
        CHECK(ph.dynamical == 0.0);
        CHECK(ph.arg_coupling == doctest::Approx(0.9));
        const double expected = kPi / 4 + arg_gamma_one_minus_i(kap) + 0.9 + kap * std::log(2 * eta / (4 * v));
        CHECK(ph.total() == doctest::Approx(expected).epsilon(1e-14));
        const Matrix s = smatrix_grid(m);
        CHECK(std::norm(s(0, 0)) == doctest::Approx(std::exp(-2 * kPi * kap)).epsilon(1e-14));
        CHECK(std::norm(s(1, 0)) == doctest::Approx(1 - std::exp(-2 * kPi * kap)).epsilon(1e-14));
        CHECK(std::abs(s(1, 0) - std::sqrt(1 - std::exp(-2 * kPi * kap)) * std::polar(1.0, -ph.total())) < 1e-15);
    }

    TEST_CASE("nonlocal phase of a two-channel grid") {
        const double a = 0.75;
        Matrix b(2, 2);
        b << Complex(0.3, 0.1), Complex(0.5, 0.0), Complex(0.0, 0.4), Complex(0.2, -0.2);
        const GridModel m = build_grid(2, 1.0, 50.0, {0.0, a}, b);
        auto kap = [&](int i, int j) { return std::norm(b(i, j - 2)) / 2.0; };
        // crossing (1,3): other pairs on level 3 and on level 1
        CHECK(nonlocal_phase_grid(m, 0, 2) == doctest::Approx((kap(1, 2) + kap(0, 3)) * std::log(a)));
        CHECK(nonlocal_phase_grid(m, 1, 3) == doctest::Approx((kap(0, 3) + kap(1, 2)) * std::log(a)));
        CHECK(nonlocal_phase_grid(m, 0, 3) == doctest::Approx((kap(1, 3) + kap(0, 2)) * std::log(a)));
        const PhaseBreakdown ph = theta_grid(m, 0, 3);
        CHECK(ph.dynamical == doctest::Approx(50.0 * a * a / 4.0));
        CHECK(ph.nonlocal == doctest::Approx(-nonlocal_phase_grid(m, 0, 3)));
    }

    TEST_CASE("nonlocal phase, generic offsets") {
        testing::Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            const GridModel m = testing::random_grid(rng, rng.integer(2, 5), {.shuffle = true});
            const int n = m.n();
            for (int i = 0; i < n; ++i) {
                for (int j = n; j < 2 * n; ++j) {
                    double theta = 0.0;
                    for (int k = 0; k < n; ++k) {
                        if (k != i) theta += kappa_grid(m, k, j) * std::log(std::abs(m.a()[k] - m.a()[i]));
                    }
                    for (int l = n; l < 2 * n; ++l) {
                        if (l != j) {
                            theta += kappa_grid(m, i, l) * std::log(std::abs(m.a()[l - n] - m.a()[j - n]));
                        }
                    }
                    CHECK(nonlocal_phase_grid(m, i, j) == doctest::Approx(theta).epsilon(1e-12));
                }
            }
        }
    }

    TEST_CASE("LZ block and unitary factor") {
        const Block2 u = lz_block(0.3, 1.1);
        CHECK((u * u.adjoint() - Block2::Identity()).norm() < 1e-15);
        CHECK(std::abs(u.determinant() - 1.0) < 1e-15);
        CHECK(lz_block(1.0, 0.4) == Block2::Identity());

        testing::Rng rng(23);
        const GridModel m = testing::random_grid(rng, 3);
        const Matrix f = unitary_factor(m, 1, 4);
        for (int r = 0; r < 6; ++r) {
            for (int c = 0; c < 6; ++c) {
                const bool in_block = (r == 1 || r == 4) && (c == 1 || c == 4);
                if (!in_block) CHECK(f(r, c) == (r == c ? Complex(1.0) : Complex(0.0)));
            }
        }
        CHECK(unitarity_residual(f) < 1e-15);
    }

    TEST_CASE("zero coupling gives the identity") {
        const GridModel m = build_grid(3, 1.0, 10.0, {0.0, 0.4, 1.1}, Matrix::Zero(3, 3));
        CHECK(smatrix_grid(m) == Matrix::Identity(6, 6));
        CHECK(gaia_validity_margin(m) == std::numeric_limits<double>::infinity());
    }

    TEST_CASE("schedule is time ordered and carries p, theta") {
        testing::Rng rng(29);
        const GridModel m = testing::random_grid(rng, 4, {.shuffle = true});
        const auto xs = grid_schedule(m);
        CHECK(xs.size() == 16);
        for (std::size_t k = 0; k < xs.size(); ++k) {
            if (k > 0) CHECK(xs[k - 1].time <= xs[k].time);
            CHECK(xs[k].p == lz_probability(kappa_grid(m, xs[k].i, xs[k].j)));
            CHECK(xs[k].theta == theta_grid(m, xs[k].i, xs[k].j).total());
        }
        // earliest factor rightmost
        Matrix s = Matrix::Identity(8, 8);
        for (const auto& x : xs) s = unitary_factor(m, x.i, x.j) * s;
        CHECK(testing::max_abs_diff(s, smatrix_grid(m)) < 1e-13);
    }

    TEST_CASE("validity margin") {
        const S4Family fam;
        CHECK(gaia_validity_margin(fam(10.0 * std::sqrt(2.0))) == doctest::Approx(10.0));
        const double m1 = gaia_validity_margin(fam(20.0));
        const GridModel base = fam(20.0);
        const GridModel doubled = build_grid(2, base.v(), 2 * base.eta(), base.a(), base.b());
        CHECK(gaia_validity_margin(doubled) == doctest::Approx(std::sqrt(2.0) * m1));
        Matrix b(1, 1);
        b(0, 0) = 1.0;
        CHECK(gaia_validity_margin(build_grid(1, 1.0, 1.0, {0.0}, b)) ==
              std::numeric_limits<double>::infinity());
        // strong coupling widens the transition region
        Matrix bs = base.b() * 4.0;
        const GridModel strong = build_grid(2, base.v(), base.eta(), base.a(), bs);
        CHECK(gaia_validity_margin(strong) < m1);
    }
}
