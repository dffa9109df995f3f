#pragma once

#include "gaia/types.hpp"

#include <vector>

namespace gaia {

// One anticrossing between down level i and up level j. For grid models n = 0;
// for LZSM models n is the signed ordinal of the crossing of that pair.
struct Crossing {
    int i = 0;
    int j = 0;
    long n = 0;
    double time = 0.0;
    double lambda = 0.0;
    double kappa = 0.0;
    double p = 1.0;
    double theta = 0.0;
};

// Levels are 0-based: down band 0..N-1 (slope -v), up band N..2N-1 (slope +v).
// b(i, m) couples down level i to up level N + m.
class GridModel {
public:
    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    double v() const { return v_; }
    double eta() const { return eta_; }
    const std::vector<double>& a() const { return a_; }
    const Matrix& b() const { return b_; }

    double offset(int level) const { return a_[level % n_]; }
    bool is_down(int level) const { return level < n_; }
    // Coupling between down level i and up level j (j >= N).
    Complex coupling(int i, int j) const { return b_(i, j - n_); }

    double crossing_time(int i, int j) const;
    Matrix hamiltonian(double t) const;

private:
    friend GridModel build_grid(int, double, double, std::vector<double>, Matrix);
    GridModel() = default;

    int n_ = 0;
    double v_ = 0.0;
    double eta_ = 0.0;
    std::vector<double> a_;
    Matrix b_;
};

GridModel build_grid(int n, double v, double eta, std::vector<double> a, Matrix b);

// All N^2 (down, up) pairs ordered by crossing time, ties broken by (i, j).
// kappa, p and theta are left for gaia_grid to fill.
std::vector<Crossing> grid_crossings(const GridModel& model);

// Roots of a_i - a_j = -2 sin(v t) for one coupled (down, up) pair.
// Root q sits at u = c + 2 pi k (q = 2k, lambda > 0) or u = pi - c + 2 pi k
// (q = 2k + 1, lambda < 0), u = v t, c = asin(delta_a / 2).
// Root q lies in drive slot q, i.e. u in (pi/2 + (q-1) pi, pi/2 + q pi].
// Ordinal n counts from the last root at or before t = 0: n = q - q0.
struct LzsmPair {
    int i = 0;
    int j = 0;
    double delta_a = 0.0;
    double c = 0.0;
    double v = 0.0;
    Complex coupling;
    double abs_lambda = 0.0;
    double kappa = 0.0;
    int q0 = 0;

    double time_of_root(long q) const;
    int sign_of_root(long q) const { return (q % 2 == 0) ? 1 : -1; }
    double time(long n) const { return time_of_root(n + q0); }
    int sign(long n) const { return sign_of_root(n + q0); }
    long ordinal_of_slot(long slot) const { return slot - q0; }
    double positive_root() const { return c / v; }
    double negative_root() const { return (kPi - c) / v; }
};

class LzsmModel {
public:
    int n() const { return n_; }
    int dim() const { return 2 * n_; }
    double v() const { return v_; }
    double eta() const { return eta_; }
    const std::vector<double>& a() const { return a_; }
    const Matrix& b() const { return b_; }
    int n_crossings() const { return n_crossings_; }
    double t_ref() const { return t_ref_; }

    double offset(int level) const { return a_[level % n_]; }
    Complex coupling(int i, int j) const { return b_(i, j - n_); }
    bool coupled(int i, int j) const { return coupling(i, j) != Complex(0.0, 0.0); }

    // Requires |a_i - a_j| < 2.
    LzsmPair pair(int i, int j) const;
    // Coupled pairs that actually cross, ordered by (i, j).
    const std::vector<LzsmPair>& pairs() const { return pairs_; }

    double quarter_period() const { return kPi / (2.0 * v_); }
    double half_period() const { return kPi / v_; }
    Window window(int n_crossings) const;

    Matrix hamiltonian(double t) const;

private:
    friend LzsmModel build_lzsm(int, double, double, std::vector<double>, Matrix, int, double);
    LzsmModel() = default;

    int n_ = 0;
    double v_ = 0.0;
    double eta_ = 0.0;
    std::vector<double> a_;
    Matrix b_;
    int n_crossings_ = 0;
    double t_ref_ = 0.0;
    std::vector<LzsmPair> pairs_;
};

LzsmModel build_lzsm(int n, double v, double eta, std::vector<double> a, Matrix b,
                     int n_crossings = 20, double t_ref = 0.0);

// Two-level system coupled to one boson mode truncated at n_boson quanta.
LzsmModel build_spin_boson(double delta, double gamma, double omega, double v, double eta,
                           int n_boson, int n_crossings = 20);

}  // namespace gaia
