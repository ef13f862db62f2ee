#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's mode, Bessel or curvature code.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

// y (a'' - k^2 a) - c a' = 0 integrated inward with classical RK4 from y0 = 20/k,
// starting on the decaying asymptote a ~ y^(c/2) exp(-k y). Growing contamination
// decays like exp(-2k (y0 - y)) on the way in. Returns (a, a') at y1.
std::pair<double, double> decay_shoot(int c, double k, double y1, int steps = 200000);

// Power-series solutions of the same ODE, built from the two-term recursion.
// Even gap (c + 1 odd): Dirichlet a_0 = 1 and Neumann y^(c+1)(1 + ...).
std::vector<double> series_dirichlet(int c, double k, int order);
std::vector<double> series_neumann(int c, double k, int order);
double eval_series(const std::vector<double>& a, double y, int derivative);

// Neumann coefficient e / b of the decaying solution, matched at y = t / k.
double shooting_dtn(int c, double k, double t = 1.0);

// Coefficient of y^2 log y in y K_1(k y) * k (normalized to 1 at y = 0), fitted from
// std::cyl_bessel_k samples with the basis {log y, 1, y^2 log y, y^2}.
double k1_log_coefficient(double k);

// Flat-space conformal change g = exp(2 phi) delta:
// P_ij = -d_i d_j phi + d_i phi d_j phi - (1/2) delta_ij |d phi|^2.
struct FourierPhi {
    struct Term {
        double amp;
        std::vector<int> mode;
        bool sine;
    };
    std::vector<Term> terms;
    std::vector<double> lengths;

    double value(const std::vector<double>& x) const;
    double d1(const std::vector<double>& x, int i) const;
    double d2(const std::vector<double>& x, int i, int j) const;
};
double conformal_schouten(const FourierPhi& phi, const std::vector<double>& x, int i, int j);

// Least squares in the normal-equations-free sense (Householder QR on a small dense system).
std::vector<double> lstsq(const std::vector<std::vector<double>>& rows, const std::vector<double>& rhs);

}  // namespace oracle
