#include "ccym/energy.hpp"

#include <cmath>

#include "ccym/errors.hpp"

namespace ccym {

namespace {

FieldMeta lie_meta() { return FieldMeta{true, std::nullopt}; }

void check_dim(int d, const BoundaryGeometry& geo, const char* who) {
    if (geo.n != d - 1) throw ShapeError(std::string(who) + ": boundary dimension must be d - 1");
}

// Pm(a, c) = P_a^c.
Tensor<MField> schouten_mixed(const BoundaryGeometry& geo) {
    const int n = geo.n;
    Tensor<MField> Pm(n, {Slot::Lower, Slot::Upper});
    if (geo.flat) return Pm;
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
            MField s;
            for (int e = 0; e < n; ++e) s += geo.schouten(a, e) * geo.ginv(e, c);
            Pm(a, c) = s;
        }
    return Pm;
}

// X(a, b) = P_a^c F_bc.
GridField contract_PF(const Tensor<MField>& Pm, const GridField& F) {
    const int n = F.n;
    GridField X(F.grid, lower_slots(2), F.N, lie_meta());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (!Pm(a, c).is_zero()) X(a, b) += Pm(a, c) * F(b, c);
    return X;
}

GridField antisym_grad_j(const GaugeData& data, const BoundaryGeometry& geo) {
    const GridField Dj = covariant_derivative(data.j, geo, &data.A);
    const int n = geo.n;
    GridField T(data.j.grid, lower_slots(2), data.j.N, lie_meta());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) T(a, b) = 0.5 * (Dj(a, b) - Dj(b, a));
    return T;
}

GridField real_scalar(const MField& m) { return GridField::scalar(m); }

}  // namespace

ObstructionCurrent obstruction_closed_form(int d, const GaugeData& data, const BoundaryGeometry& geo) {
    check_dim(d, geo, "obstruction_closed_form");
    ObstructionCurrent k;
    k.d = d;
    const int n = geo.n;
    if (d == 5) {
        k.kbar = data.j;
    } else if (d == 6) {
        k.kbar = GridField(data.j.grid, lower_slots(1), data.j.N);
    } else if (d == 7) {
        GridField T = antisym_grad_j(data, geo);
        if (!geo.flat) {
            const Tensor<MField> Pm = schouten_mixed(geo);
            const GridField X = contract_PF(Pm, data.F);  // P_a^c F_bc
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    T(a, b) -= 2.0 * (X(a, b) - X(b, a));
                    T(a, b) -= geo.J * data.F(a, b);
                }
        }
        k.kbar = scale(0.5, divergence(T, geo, &data.A));
        const auto ju = raise_slot<MField>(data.j, geo.ginv_ptr(), 0);
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) k.kbar(b) += 0.25 * comm(ju(a), data.F(a, b));
    } else {
        throw DomainError("obstruction_closed_form: closed forms exist for d = 5, 6, 7");
    }
    k.kbar.meta = FieldMeta{true, 3 - d};
    return k;
}

GridField energy_density_Q(int d, const GaugeData& data, const BoundaryGeometry& geo) {
    check_dim(d, geo, "energy_density_Q");
    const MField trF2 = trace(pair_two_forms(data.F, data.F, geo));
    if (d == 5) return real_scalar(-0.25 * trF2);
    if (d != 7) throw DomainError("energy_density_Q: closed forms exist for d = 5, 7");
    MField lap = rough_laplacian(GridField::scalar(trF2), geo, nullptr).c[0];
    MField s = pair_one_forms(data.j, data.j, geo);
    s += 2.0 * pair_two_forms(data.F, antisym_grad_j(data, geo), geo);
    if (!geo.flat) {
        s -= geo.J * pair_two_forms(data.F, data.F, geo);
        s -= 4.0 * pair_two_forms(data.F, contract_PF(schouten_mixed(geo), data.F), geo);
    }
    return real_scalar(-(1.0 / 32.0) * lap - 0.125 * trace(s));
}

GridField energy_density_Q_reduced(int d, const GaugeData& data, const BoundaryGeometry& geo) {
    check_dim(d, geo, "energy_density_Q_reduced");
    if (d == 5) return energy_density_Q(5, data, geo);
    if (d != 7) throw DomainError("energy_density_Q_reduced: available for d = 5, 7");
    MField s = pair_one_forms(data.j, data.j, geo);
    if (!geo.flat) {
        s += geo.J * pair_two_forms(data.F, data.F, geo);
        s += 4.0 * pair_two_forms(data.F, contract_PF(schouten_mixed(geo), data.F), geo);
    }
    return real_scalar(0.125 * trace(s));
}

double energy(const GridField& Q, const BoundaryGeometry& geo) {
    if (Q.rank() != 0) throw ShapeError("energy: Q must be a scalar field");
    if (!same_grid(Q.grid, geo.grid)) throw ShapeError("energy: mismatched grid");
    return integrate(Q.c[0], geo.volume).real();
}

RSeries action_density_series(const ConnectionExpansion& exp, int upto) {
    const CollarBackground& bg = *exp.background;
    ConnectionExpansion plain = exp;
    plain.log_coeff.reset();
    const Tensor<RSeries> A = plain.series(upto + 1);
    const auto Ar = plain.radial_series(upto + 1);
    const Tensor<RSeries> F = gauge_curvature_t(A);
    const Tensor<RSeries> Fr = radial_field_strength(A, Ar ? &*Ar : nullptr);
    const int n = A.n;
    RSeries s;
    if (bg.exactly_flat) {
        for (int i = 0; i < n; ++i) s = s + 2.0 * (Fr(i) * Fr(i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s = s + F(i, j) * F(i, j);
    } else {
        const auto Fru = raise_slot(Fr, &bg.hinv, 0);
        for (int i = 0; i < n; ++i) s = s + 2.0 * (Fru(i) * Fr(i));
        const auto Fu = raise_slot(raise_slot(F, &bg.hinv, 0), &bg.hinv, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s = s + Fu(i, j) * F(i, j);
    }
    return (-0.25 * trace(s)).truncate(upto);
}

RSeries laplace_robin_flat(const RSeries& f, int d, int w) {
    const int top = f.exact() ? f.stored() : f.order() - 1;
    auto get = [&](int m) -> MField {
        if (m < 0 || m > f.order() || m >= f.stored()) return {};
        if (!f.log_coeff(m).is_zero()) throw DomainError("laplace_robin_flat: log terms are not supported");
        return f.coeff(m);
    };
    std::vector<MField> out(std::max(top + 1, 0));
    for (int k = 0; k <= top; ++k) {
        MField v = ((d + 2.0 * w - 2.0) * (k + 1.0) - (k + 1.0) * k) * get(k + 1);
        const MField prev = get(k - 1);
        if (!prev.is_zero()) v -= flat_laplacian(prev);
        out[k] = std::move(v);
    }
    return f.exact() ? RSeries::polynomial(std::move(out)) : RSeries::truncated(std::move(out), f.order() - 1);
}

double holographic_energy(const ConnectionExpansion& exp) {
    const int d = exp.d();
    if (!exp.background->exactly_flat) throw DomainError("holographic_energy: only exactly flat collars are supported");
    if (d < 5) throw DomainError("holographic_energy: needs d >= 5");
    if (exp.max_order() < d - 4)
        throw DomainError("holographic_energy: expansion must reach r^" + std::to_string(d - 4) + " so that Tr F^2 is known through r^" +
                          std::to_string(d - 5));
    RSeries f = action_density_series(exp, d - 5);
    for (int i = 0; i < d - 5; ++i) f = laplace_robin_flat(f, d, -4 - i);
    const double pref = 6.0 / (std::tgamma(d - 4.0) * std::tgamma(d - 1.0));
    const MField f0 = coeff_or_zero(f, 0, exp.grid(), 1);
    return pref * integrate(f0).real();
}

EnergyMethod parse_energy_method(const std::string& s) {
    if (s == "q" || s == "closed_form_Q") return EnergyMethod::ClosedFormQ;
    if (s == "holographic" || s == "holographic_ID") return EnergyMethod::Holographic;
    throw DomainError("unknown energy method '" + s + "' (use q or holographic)");
}

double energy_of(const CollarPtr& bg, const GridField& A0, const LieAlgebraSpec& lie, EnergyMethod m) {
    const int d = bg->d;
    if (m == EnergyMethod::ClosedFormQ) {
        const GaugeData gd = gauge_data(A0, bg->geo);
        return energy(energy_density_Q(d, gd, bg->geo), bg->geo);
    }
    return holographic_energy(magnetic_expand(bg, A0, d - 4, lie));
}

GradientReport functional_gradient_check(const CollarPtr& bg, const GridField& A0, const LieAlgebraSpec& lie,
                                         const std::vector<GridField>& directions, double h, EnergyMethod m) {
    const int d = bg->d;
    if (d != 5 && d != 7) throw DomainError("functional_gradient_check: needs d = 5 or 7");
    if (directions.empty()) throw DomainError("functional_gradient_check: no directions");
    if (!(h > 0.0)) throw DomainError("functional_gradient_check: step must be positive");
    const GridField kbar = obstruction_extract(magnetic_expand(bg, A0, d - 4, lie)).kbar;
    auto En = [&](const GridField& A) { return energy_of(bg, A, lie, m); };
    auto fd = [&](const GridField& v, double step) {
        return (En(add(A0, scale(step, v))) - En(sub(A0, scale(step, v)))) / (2.0 * step);
    };
    GradientReport rep;
    rep.step = h;
    double fdmax = 0.0;
    for (const auto& v : directions) {
        if (!same_grid(v.grid, A0.grid) || v.N != A0.N || v.rank() != 1) throw ShapeError("functional_gradient_check: direction shape mismatch");
        GradientDirection g;
        g.fd = fd(v, h);
        g.fd_half = fd(v, 0.5 * h);
        const double nl = std::abs(g.fd - g.fd_half) / std::max(std::abs(g.fd), 1e-300);
        if (nl > 1e-3) throw PreconditionError("functional_gradient_check: step too large, h vs h/2 disagree by " + std::to_string(nl), nl);
        g.pairing = trace_pairing(kbar, v, bg->geo);
        g.ratio = g.fd / g.pairing;
        fdmax = std::max(fdmax, std::abs(g.fd));
        rep.directions.push_back(g);
    }
    double mean = 0.0;
    for (const auto& g : rep.directions) mean += g.ratio;
    mean /= static_cast<double>(rep.directions.size());
    rep.ratio_mean = mean;
    for (const auto& g : rep.directions) rep.ratio_spread = std::max(rep.ratio_spread, std::abs(g.ratio - mean) / std::abs(mean));

    const GridField& v0 = directions[0];
    const double c = trace_pairing(kbar, v0, bg->geo) / trace_pairing(kbar, kbar, bg->geo);
    GridField k0 = kbar;
    k0.meta.weight.reset();
    const GridField orth = sub(v0, scale(c, k0));
    rep.orthogonal_fd = fd(orth, h);
    rep.orthogonal_rel = std::abs(rep.orthogonal_fd) / std::max(fdmax, 1e-300);
    const double f2 = fd(scale(2.0, v0), h);
    rep.linearity = std::abs(f2 - 2.0 * rep.directions[0].fd) / std::max(std::abs(2.0 * rep.directions[0].fd), 1e-300);
    return rep;
}

}  // namespace ccym
