#pragma once

#include <utility>
#include <vector>

#include "ccym/expansion.hpp"

namespace ccym {

// Collar part of the regulated action,
//   S^eps = integral_eps^rstar dr r^(4-d) integral dx f(x, r),  f = -(1/4) Tr F^2_(dr^2 + h),
// from the series f = sum_k f_k r^k truncated at r^max_power (default: every known order).
// Exactly flat collars only; the interior beyond rstar is not included.
class RegulatedAction {
public:
    RegulatedAction(const ConnectionExpansion& exp, int max_power = -1);

    double operator()(double eps, double rstar) const;
    int d() const { return d_; }
    int max_power() const { return static_cast<int>(L_.size()) - 1; }
    // L_k = integral f_k dx
    const std::vector<double>& moments() const { return L_; }

private:
    int d_ = 0;
    std::vector<double> L_;
};

double regulated_action(const ConnectionExpansion& exp, double eps, double rstar, int max_power = -1);

using Samples = std::vector<std::pair<double, double>>;

// count log-spaced eps in [eps_min, eps_max].
Samples action_samples(const RegulatedAction& S, double eps_min, double eps_max, int count, double rstar,
                       double eps_scale = 1.0);

// Laurent numerators v_l (l = 1..d-5), log(1/eps) coefficient, constant term.
struct ActionAsymptotics {
    int d = 0;
    std::vector<double> v;  // v[l - 1]
    bool log_fitted = false;
    double En_log = 0.0;
    double S_ren = 0.0;
    std::vector<double> positive;  // coefficients of eps, eps^2
    double fit_residual = 0.0;
    double condition = 0.0;
    Samples samples;
};

// Basis {eps^-(d-5), ..., eps^-1, log(1/eps), 1, eps, eps^2}; the log column is optional.
ActionAsymptotics laurent_fit(const Samples& samples, int d, bool include_log);

struct AnomalyReport {
    double lambda = 1.0;
    double shift = 0.0;      // S_ren(eps -> eps / lambda) - S_ren
    double En_log = 0.0;
    double predicted = 0.0;  // log(lambda) En_log
    double rel_error = 0.0;
    ActionAsymptotics base, scaled;
};

AnomalyReport anomaly_check(const RegulatedAction& S, double lambda, double eps_min, double eps_max, int count,
                            double rstar, bool include_log);

}  // namespace ccym
