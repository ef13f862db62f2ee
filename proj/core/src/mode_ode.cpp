#include "ccym/mode_ode.hpp"

#include <boost/math/constants/constants.hpp>
#include <cmath>

#include "ccym/bessel.hpp"
#include "ccym/errors.hpp"

namespace ccym {

std::string branch_name(Branch b) {
    switch (b) {
        case Branch::Dirichlet: return "dirichlet";
        case Branch::Neumann: return "neumann";
        case Branch::Log: return "log";
    }
    return "?";
}

Branch parse_branch(const std::string& s) {
    if (s == "dirichlet") return Branch::Dirichlet;
    if (s == "neumann") return Branch::Neumann;
    if (s == "log") return Branch::Log;
    throw DomainError("unknown branch '" + s + "'");
}

double ModeSolution::value(double y) const { return derivative(y, 0); }

double ModeSolution::derivative(double y, int n) const {
    if (n < 0 || n > 2) throw DomainError("ModeSolution::derivative: n must be 0, 1 or 2");
    double s = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double m = static_cast<double>(i);
        if (coeffs[i] == 0.0) continue;
        if (n == 0) s += coeffs[i] * std::pow(y, m);
        else if (n == 1 && i >= 1) s += coeffs[i] * m * std::pow(y, m - 1);
        else if (n == 2 && i >= 2) s += coeffs[i] * m * (m - 1) * std::pow(y, m - 2);
    }
    const double ly = std::log(y);
    for (std::size_t i = 0; i < log_coeffs.size(); ++i) {
        const double m = static_cast<double>(i);
        const double q = log_coeffs[i];
        if (q == 0.0) continue;
        if (n == 0) s += q * std::pow(y, m) * ly;
        else if (n == 1) s += q * (m * std::pow(y, m - 1) * ly + std::pow(y, m - 1));
        else s += q * (m * (m - 1) * std::pow(y, m - 2) * ly + (2 * m - 1) * std::pow(y, m - 2));
    }
    return s;
}

ModeSolution frobenius_series(const RadialODE& ode, Branch branch, int order, double free_coeff) {
    if (order < 2) throw DomainError("frobenius_series: order must be at least 2");
    if (ode.c < 0) throw DomainError("frobenius_series: first-order coefficient c must be non-negative");
    const int c = ode.c;
    const double k2 = ode.k * ode.k;
    ModeSolution s;
    s.ode = ode;
    s.branch = branch;
    s.order = order;
    s.coeffs.assign(order + 1, 0.0);
    std::vector<double>& a = s.coeffs;

    if (branch == Branch::Neumann) {
        const int n0 = c + 1;
        std::vector<double> b(order + 1, 0.0);
        b[0] = 1.0;
        for (int m = 2; m + n0 <= order; ++m) b[m] = k2 * b[m - 2] / (m * (m + c + 1.0));
        for (int m = 0; m + n0 <= order; ++m) a[m + n0] = b[m];
        return s;
    }

    const bool want_log = branch == Branch::Log;
    if (want_log && (c + 1) % 2 != 0) throw DomainError("frobenius_series: log branch needs an even exponent gap c + 1");
    a[0] = 1.0;
    for (int m = 0; m + 2 <= order; ++m) {
        const double den = (m + 2.0) * (m + 1.0 - c);
        if (den != 0.0) {
            if (want_log && m + 2 > c + 1) break;
            a[m + 2] = k2 * a[m] / den;
            continue;
        }
        // m + 2 = c + 1: the Neumann root.
        if (a[m] == 0.0) {
            a[m + 2] = free_coeff;
            continue;
        }
        if (!want_log) throw ResonanceError("frobenius_series: resonance at y^" + std::to_string(m + 2) + "; request the log branch", m + 2);
        break;
    }
    if (!want_log) return s;

    // Log companion P y^(c+1) log y sum_m b_m y^m; b_m is the Neumann recursion.
    const int n0 = c + 1;
    const double P = k2 * a[c - 1] / (c + 1.0);
    s.log_coefficient = P;
    s.log_coeffs.assign(order + 1, 0.0);
    std::vector<double> b(order + 1, 0.0);
    b[0] = 1.0;
    for (int m = 2; m + n0 <= order; ++m) b[m] = k2 * b[m - 2] / (m * (m + c + 1.0));
    for (int m = 0; m + n0 <= order; ++m) s.log_coeffs[m + n0] = P * b[m];
    if (n0 <= order) a[n0] = free_coeff;
    for (int m = 1; n0 + m <= order; ++m)
        a[n0 + m] = (k2 * a[c - 1 + m] - (c + 1.0 + 2 * m) * P * b[m]) / ((c + 1.0 + m) * m);
    return s;
}

double global_mode_solution(const RadialODE& ode, double y, int derivative) {
    if (!(y > 0.0)) throw DomainError("global_mode_solution: y must be positive");
    if (!(ode.k > 0.0)) throw DomainError("global_mode_solution: k must be positive");
    const double nu = 0.5 * (ode.c + 1);
    const double x = ode.k * y;
    const double pref = 2.0 / std::tgamma(nu);
    auto val = [&]() { return pref * std::pow(0.5 * x, nu) * bessel_KI(nu, x).K; };
    // d/dx [x^nu K_nu(x)] = -x^nu K_(nu-1)(x), K_(-mu) = K_mu.
    auto der = [&]() { return -ode.k * pref * std::pow(0.5 * x, nu) * bessel_KI(std::abs(nu - 1.0), x).K; };
    if (derivative == 0) return val();
    if (derivative == 1) return der();
    if (derivative == 2) return ode.k * ode.k * val() + ode.c / y * der();
    throw DomainError("global_mode_solution: derivative must be 0, 1 or 2");
}

double double_factorial(int n) {
    if (n < -1) throw DomainError("double_factorial: n must be >= -1");
    if (n <= 0) return 1.0;
    double r;
    if (n % 2 == 1)
        r = std::exp(std::lgamma(0.5 * n + 1.0) + 0.5 * (n + 1) * std::log(2.0) - 0.5 * std::log(boost::math::constants::pi<double>()));
    else
        r = std::exp(std::lgamma(0.5 * n + 1.0) + 0.5 * n * std::log(2.0));
    return r < 9.0e15 ? std::round(r) : r;
}

double harmonic_number(int n) {
    double s = 0.0;
    for (int i = 1; i <= n; ++i) s += 1.0 / i;
    return s;
}

DtnRecord dtn_for(const RadialODE& ode) {
    if (ode.k < 0.0) throw DomainError("dtn: k must be non-negative");
    DtnRecord r;
    r.d = ode.d;
    r.k = ode.k;
    const int n = ode.c + 1;
    r.exponent = n;
    r.log_case = n % 2 == 0;
    r.scheme = r.log_case ? "log(y/tau), tau = 1, a_(c+1) = 0 in the log branch" : "exact";
    if (ode.k == 0.0) return r;
    const double lk = std::log(ode.k);
    if (!r.log_case) {
        const double sign = ((n + 1) / 2) % 2 == 0 ? 1.0 : -1.0;
        r.value = sign * std::exp(n * lk) / (double_factorial(n) * double_factorial(n - 2));
        return r;
    }
    const int h = n / 2;
    const double sign = h % 2 == 0 ? -1.0 : 1.0;  // -(-1)^h
    r.log_coeff = sign * std::exp(n * lk - (n - 1) * std::log(2.0) - std::lgamma(h) - std::lgamma(h + 1.0));
    r.value = (std::log(0.5 * ode.k) + boost::math::constants::euler<double>() - 0.5 * harmonic_number(h)) * r.log_coeff;
    return r;
}

DtnRecord maxwell_dtn(int d, double k) {
    if (d < 5) throw DomainError("maxwell_dtn: d must be at least 5");
    return dtn_for(RadialODE::maxwell(d, k));
}

DtnRecord scalar_dtn(int d, double k) {
    if (d < 2) throw DomainError("scalar_dtn: d must be at least 2");
    return dtn_for(RadialODE::scalar(d, k));
}

ScalarOps scalar_boundary_ops(const ScalarJet& jet, int d, int w, double k, bool curved_collar) {
    if (curved_collar) throw DomainError("scalar_boundary_ops: only the flat-collar normal form is supported");
    const double k2 = k * k;
    ScalarOps o;
    o.delta1 = jet.f1;
    o.delta2 = (d + 2 * w - 3) * jet.f2 + k2 * jet.f0;
    o.delta3 = (d + 2 * w - 5) * jet.f3 + 3.0 * k2 * jet.f1;
    o.delta2_3 = jet.f2;
    o.delta3_5 = jet.f3;
    return o;
}

}  // namespace ccym
