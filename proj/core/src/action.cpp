#include "ccym/action.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "ccym/energy.hpp"
#include "ccym/errors.hpp"

namespace ccym {

RegulatedAction::RegulatedAction(const ConnectionExpansion& exp, int max_power) : d_(exp.d()) {
    if (!exp.background->exactly_flat) throw DomainError("regulated_action: only exactly flat collars are supported");
    const int known = exp.max_order() - 1;
    if (known < 0) throw DomainError("regulated_action: expansion needs at least two coefficients");
    if (max_power > known)
        throw DomainError("regulated_action: series known through r^" + std::to_string(known) + ", first untracked order r^" +
                          std::to_string(known + 1));
    const int top = max_power < 0 ? known : max_power;
    const RSeries f = action_density_series(exp, top);
    L_.assign(top + 1, 0.0);
    for (int k = 0; k <= top; ++k) L_[k] = integrate(coeff_or_zero(f, k, exp.grid(), 1)).real();
}

double RegulatedAction::operator()(double eps, double rstar) const {
    if (!(eps > 0.0) || !(eps < rstar)) throw DomainError("regulated_action: needs 0 < eps < rstar");
    // t = log r; each power is integrated on its own so the large singular
    // terms do not swamp the quadrature tolerance of the small ones.
    const double a = std::log(eps), b = std::log(rstar);
    double total = 0.0;
    for (std::size_t k = 0; k < L_.size(); ++k) {
        if (L_[k] == 0.0) continue;
        const double p = static_cast<double>(k) + 5.0 - d_;
        auto g = [p](double t) { return std::exp(p * t); };
        total += L_[k] * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(g, a, b, 20, 1e-15);
    }
    return total;
}

double regulated_action(const ConnectionExpansion& exp, double eps, double rstar, int max_power) {
    return RegulatedAction(exp, max_power)(eps, rstar);
}

Samples action_samples(const RegulatedAction& S, double eps_min, double eps_max, int count, double rstar, double eps_scale) {
    if (count < 2) throw DomainError("action_samples: need at least two samples");
    if (!(eps_min > 0.0) || !(eps_max > eps_min)) throw DomainError("action_samples: need 0 < eps_min < eps_max");
    Samples out;
    const double a = std::log(eps_min), b = std::log(eps_max);
    for (int i = 0; i < count; ++i) {
        const double eps = std::exp(a + (b - a) * i / (count - 1.0));
        out.emplace_back(eps, S(eps * eps_scale, rstar));
    }
    return out;
}

ActionAsymptotics laurent_fit(const Samples& samples, int d, bool include_log) {
    if (d < 5) throw DomainError("laurent_fit: needs d >= 5");
    const int nsing = d - 5;
    const int cols = nsing + (include_log ? 1 : 0) + 3;
    if (static_cast<int>(samples.size()) < std::max(2 * (d - 3), cols))
        throw DomainError("laurent_fit: need at least " + std::to_string(std::max(2 * (d - 3), cols)) + " samples");
    const int rows = static_cast<int>(samples.size());
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd y(rows);
    for (int i = 0; i < rows; ++i) {
        const double e = samples[i].first;
        int c = 0;
        for (int l = nsing; l >= 1; --l) X(i, c++) = std::pow(e, -l);
        if (include_log) X(i, c++) = std::log(1.0 / e);
        X(i, c++) = 1.0;
        X(i, c++) = e;
        X(i, c++) = e * e;
        y(i) = samples[i].second;
    }
    Eigen::VectorXd colscale = X.cwiseAbs().colwise().maxCoeff().transpose();
    Eigen::MatrixXd Xs = X * colscale.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    ActionAsymptotics r;
    r.d = d;
    r.condition = sv(0) / sv(sv.size() - 1);
    if (!(r.condition < 1e13))
        throw DomainError("laurent_fit: ill-conditioned design matrix (condition " + std::to_string(r.condition) + "); widen the eps range");
    const Eigen::VectorXd coef = colscale.cwiseInverse().asDiagonal() * svd.solve(y);
    r.fit_residual = (X * coef - y).cwiseAbs().maxCoeff();
    int c = 0;
    r.v.assign(nsing, 0.0);
    for (int l = nsing; l >= 1; --l) r.v[l - 1] = l * coef(c++);
    r.log_fitted = include_log;
    if (include_log) r.En_log = coef(c++);
    r.S_ren = coef(c++);
    r.positive = {coef(c), coef(c + 1)};
    r.samples = samples;
    return r;
}

AnomalyReport anomaly_check(const RegulatedAction& S, double lambda, double eps_min, double eps_max, int count,
                            double rstar, bool include_log) {
    if (!(lambda >= 0.25 && lambda <= 4.0)) throw DomainError("anomaly_check: lambda must lie in [1/4, 4]");
    AnomalyReport rep;
    rep.lambda = lambda;
    rep.base = laurent_fit(action_samples(S, eps_min, eps_max, count, rstar), S.d(), include_log);
    rep.scaled = laurent_fit(action_samples(S, eps_min, eps_max, count, rstar, 1.0 / lambda), S.d(), include_log);
    rep.shift = rep.scaled.S_ren - rep.base.S_ren;
    rep.En_log = rep.base.En_log;
    rep.predicted = std::log(lambda) * rep.En_log;
    rep.rel_error = std::abs(rep.shift - rep.predicted) / std::max(std::abs(rep.predicted), 1e-300);
    return rep;
}

}  // namespace ccym
