#pragma once

#include <string>
#include <vector>

namespace ccym {

// y (a'' - k^2 a) - c a' = 0. Indicial roots 0 and c + 1.
struct RadialODE {
    int d = 5;
    int c = 1;
    double k = 1.0;

    static RadialODE maxwell(int d, double k) { return {d, d - 4, k}; }
    static RadialODE scalar(int d, double k) { return {d, d - 2, k}; }
    int neumann_exponent() const { return c + 1; }
    // Residual y(a'' - k^2 a) - c a' from value and derivatives.
    double residual(double y, double a, double da, double dda) const { return y * (dda - k * k * a) - c * da; }
};

enum class Branch { Dirichlet, Neumann, Log };

std::string branch_name(Branch b);
Branch parse_branch(const std::string& s);

// Formal solution sum_m coeffs[m] y^m + log(y) sum_m log_coeffs[m] y^m, known through `order`.
// Dirichlet: a_0 = 1. Neumann: y^(c+1) (1 + ...). Log: a_0 = 1 with the log companion
// P y^(c+1) log y (...) switched on; the free coefficient a_(c+1) is `free_coeff`.
struct ModeSolution {
    RadialODE ode;
    Branch branch = Branch::Dirichlet;
    int order = 0;
    std::vector<double> coeffs;
    std::vector<double> log_coeffs;
    double log_coefficient = 0.0;  // P, coefficient of y^(c+1) log y

    double value(double y) const;
    double derivative(double y, int n) const;  // n = 0, 1, 2
};

ModeSolution frobenius_series(const RadialODE& ode, Branch branch, int order, double free_coeff = 0.0);

// Decaying global solution normalized to a(0) = 1: (2/Gamma(nu)) (ky/2)^nu K_nu(ky), nu = (c+1)/2.
double global_mode_solution(const RadialODE& ode, double y, int derivative = 0);

// Dirichlet-to-Neumann data of the decaying solution with a(0) = b = 1.
// Even gap (no log): value = e/b exactly. Log case: log_coeff = P (scheme independent)
// and value = finite part e in the scheme log(y / tau) with tau = 1.
struct DtnRecord {
    int d = 0;
    int exponent = 0;
    double k = 0.0;
    bool log_case = false;
    double value = 0.0;
    double log_coeff = 0.0;
    std::string scheme;
};

DtnRecord maxwell_dtn(int d, double k);
DtnRecord scalar_dtn(int d, double k);
DtnRecord dtn_for(const RadialODE& ode);

// n!! for n >= -1 through the Gamma function.
double double_factorial(int n);
double harmonic_number(int n);

// Radial derivatives f(0), f'(0), f''(0), f'''(0) of a mode with Laplacian eigenvalue -k^2.
struct ScalarJet {
    double f0 = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
};

struct ScalarOps {
    double delta1 = 0.0;    // f'
    double delta2 = 0.0;    // (d + 2w - 3) f'' + k^2 f
    double delta3 = 0.0;    // (d + 2w - 5) f''' + 3 k^2 f'
    double delta2_3 = 0.0;  // f''
    double delta3_5 = 0.0;  // f'''
};

// Flat-collar normal form only.
ScalarOps scalar_boundary_ops(const ScalarJet& jet, int d, int w, double k, bool curved_collar = false);

}  // namespace ccym
