#include <doctest.h>

#include <gaia/analysis.hpp>
#include <gaia/error.hpp>
#include <gaia/exact_oracle.hpp>
#include <gaia/gaia_grid.hpp>
#include <gaia/special.hpp>

#include <cmath>

#include "support/generators.hpp"

using namespace gaia;

namespace {

GridModel two_level(double kappa, double eta) {
    Matrix b(1, 1);
    b(0, 0) = std::sqrt(2.0 * kappa);
    return build_grid(1, 1.0, eta, {0.0}, b);
}

std::vector<double> final_probs(const PropagationTrace& t) { return t.probabilities.back(); }

}  // namespace

TEST_SUITE("oracle") {
    TEST_CASE("uncoupled levels keep their populations") {
        const GridModel m = build_grid(2, 1.0, 30.0, {0.0, 0.7}, Matrix::Zero(2, 2));
        PropagatorConfig cfg;
        cfg.window = default_window(m);
        cfg.tolerance = 1e-8;
        Vector psi(4);
        psi << 0.5, Complex(0.0, 0.5), -0.5, 0.5;
        cfg.initial_state = psi;
        const auto tr = propagate_exact(m, cfg);
        for (int k = 0; k < 4; ++k) CHECK(tr.probabilities.back()[k] == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(tr.propagator.isDiagonal(1e-13));
    }

    TEST_CASE("two-level Landau-Zener") {
        for (double kappa : {0.1, 0.5, 1.0}) {
            const GridModel m = two_level(kappa, 400.0);
            PropagatorConfig cfg;
            cfg.window = default_window(m);
            cfg.tolerance = 1e-9;
            const auto p = final_probs(propagate_exact(m, cfg));
            CHECK(std::abs(p[0] - lz_probability(kappa)) <= 0.01);
            CHECK(p[0] + p[1] == doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    TEST_CASE("propagator is unitary and time reversible") {
        testing::Rng rng(83);
        const GridModel m = testing::random_grid(rng, 2, {.eta_lo = 20.0, .eta_hi = 40.0, .kappa_max = 0.5});
        const HamiltonianFn h = [&](double t) { return m.hamiltonian(t); };
        const Window w = default_window(m);
        const Matrix fwd = evolution_operator(h, 4, w.t_initial, w.t_final, 1e-10);
        const Matrix back = evolution_operator(h, 4, w.t_final, w.t_initial, 1e-10);
        CHECK(unitarity_residual(fwd) < 1e-9);
        CHECK((back * fwd - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-6);
    }

    TEST_CASE("tighter tolerance converges") {
        const GridModel m = S4Family{}(20.0);
        PropagatorConfig cfg;
        cfg.window = default_window(m);
        auto run = [&](double tol) {
            cfg.tolerance = tol;
            return final_probs(propagate_exact(m, cfg));
        };
        const auto coarse = run(1e-6);
        const auto mid = run(1e-8);
        const auto fine = run(1e-10);
        double d1 = 0.0, d2 = 0.0;
        for (int k = 0; k < 4; ++k) {
            d1 = std::max(d1, std::abs(coarse[k] - fine[k]));
            d2 = std::max(d2, std::abs(mid[k] - fine[k]));
        }
        CHECK(d2 <= d1);
        CHECK(d2 < 1e-6);
    }

    TEST_CASE("widening the window barely moves well-separated results") {
        const GridModel m = S4Family{}(45.0);
        REQUIRE(gaia_validity_margin(m) >= 30.0);
        PropagatorConfig cfg;
        cfg.tolerance = 1e-9;
        const Window w = default_window(m);
        const double half = 0.5 * (w.t_final - w.t_initial);
        for (int level = 0; level < 4; ++level) {
            cfg.window = w;
            const auto p1 = asymptotic_probabilities(m, level, cfg);
            cfg.window = {w.t_initial - half, w.t_final + half};
            const auto p2 = asymptotic_probabilities(m, level, cfg);
            for (int k = 0; k < 4; ++k) CHECK(std::abs(p1[k] - p2[k]) <= 1e-3);
        }
    }

    TEST_CASE("eigenbasis readout") {
        const GridModel z = build_grid(2, 1.0, 30.0, {0.0, 0.7}, Matrix::Zero(2, 2));
        PropagatorConfig cfg;
        cfg.window = default_window(z);
        cfg.tolerance = 1e-8;
        const auto p = asymptotic_probabilities(z, 2, cfg);
        for (int k = 0; k < 4; ++k) CHECK(p[k] == doctest::Approx(k == 2 ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));

        const GridModel m = S4Family{}(20.0);
        cfg.window = default_window(m);
        const auto q = asymptotic_probabilities(m, 3, cfg);
        double sum = 0.0;
        for (double x : q) sum += x;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        CHECK_THROWS_AS(asymptotic_probabilities(m, 4, cfg), Error);
    }

    TEST_CASE("sample times are recorded in order") {
        const GridModel m = two_level(0.3, 50.0);
        PropagatorConfig cfg;
        cfg.window = {-2.0, 2.0};
        cfg.tolerance = 1e-8;
        cfg.sample_times = {1.0, -1.0, 0.0, 5.0, 1.0};
        const auto tr = propagate_exact(m, cfg);
        CHECK(tr.times == std::vector<double>{-2.0, -1.0, 0.0, 1.0, 2.0});
        cfg.window = {2.0, -2.0};
        CHECK(propagate_exact(m, cfg).times == std::vector<double>{2.0, 1.0, 0.0, -1.0, -2.0});
    }

    TEST_CASE("errors") {
        const HamiltonianFn bad = [](double) {
            Matrix h(2, 2);
            h << 0.0, 1.0, 0.0, 0.0;
            return h;
        };
        PropagatorConfig cfg;
        cfg.window = {0.0, 1.0};
        try {
            propagate_exact(bad, 2, cfg);
            FAIL("expected NonHermitianInput");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonHermitianInput);
        }
        const GridModel m = two_level(0.3, 50.0);
        cfg.window = default_window(m);
        cfg.max_steps = 10;
        try {
            propagate_exact(m, cfg);
            FAIL("expected StepLimitExceeded");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::StepLimitExceeded);
            CHECK_FALSE(is_validation_error(e.code()));
        }
        cfg.max_steps = 1000;
        cfg.tolerance = 0.0;
        CHECK_THROWS_AS(propagate_exact(m, cfg), Error);
    }

    TEST_CASE("adiabatic start state") {
        const LzsmModel m = build_spin_boson(0.1, 0.1, 0.2, 1.0, 10.0, 3, 2);
        const Window w = default_window(m, 2);
        CHECK(w.t_initial == doctest::Approx(kPi / 2));
        CHECK(w.t_final == doctest::Approx(kPi / 2 + 2 * kPi));
        const Vector psi = adiabatic_state(m.hamiltonian(w.t_initial), 0);
        CHECK(psi.norm() == doctest::Approx(1.0));
        CHECK(std::norm(psi(0)) > 0.99);
    }
}
