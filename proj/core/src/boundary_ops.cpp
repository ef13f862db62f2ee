#include "ccym/boundary_ops.hpp"

#include "ccym/errors.hpp"

namespace ccym {

namespace {

FieldMeta lie_meta() { return FieldMeta{true, std::nullopt}; }

GridField one_form(const CurvatureJet& jet) { return GridField(jet.A0.grid, lower_slots(1), jet.A0.N, lie_meta()); }

void require(bool ok, const std::string& what, double measured) {
    if (!ok) throw PreconditionError(what, measured);
}

}  // namespace

E2Variant parse_e2_variant(const std::string& s) {
    if (s.empty() || s == "check") return E2Variant::Check;
    if (s == "E2_5") return E2Variant::E2_5;
    throw DomainError("unknown E2 variant '" + s + "'");
}

E3Variant parse_e3_variant(const std::string& s) {
    if (s.empty() || s == "full") return E3Variant::Full;
    if (s == "E3_7") return E3Variant::E3_7;
    throw DomainError("unknown E3 variant '" + s + "'");
}

E4Variant parse_e4_variant(const std::string& s) {
    if (s.empty() || s == "flat_generic") return E4Variant::FlatGeneric;
    if (s == "E4_4") return E4Variant::E4_4;
    if (s == "E4_5") return E4Variant::E4_5;
    if (s == "E4_7") return E4Variant::E4_7;
    if (s == "E4_9") return E4Variant::E4_9;
    throw DomainError("unknown E4 variant '" + s + "'");
}

CurvatureJet curvature_jet(const ConnectionExpansion& exp, int levels) {
    if (levels < 1 || levels > 4) throw DomainError("curvature_jet: levels must be 1..4");
    const CollarBackground& bg = *exp.background;
    CurvatureJet jet;
    jet.d = exp.d();
    jet.background = exp.background;
    jet.A0 = exp.coeffs[0];
    const GaugeData gd = gauge_data(jet.A0, bg.geo);
    jet.F = gd.F;
    jet.j = gd.j;

    ConnectionExpansion plain = exp;
    plain.log_coeff.reset();
    const Tensor<RSeries> A = plain.series(levels);
    const auto Ar = plain.radial_series(levels);
    Tensor<RSeries> K = radial_field_strength(A, Ar ? &*Ar : nullptr);
    const int n = A.n;
    for (int m = 0; m < levels; ++m) {
        jet.K.push_back(series_coeff(K, 0, exp.grid(), exp.N(), lie_meta()));
        if (m + 1 == levels) break;
        Tensor<RSeries> next(n, lower_slots(1));
        for (int dd = 0; dd < n; ++dd) {
            RSeries v = K(dd).dr();
            if (Ar) v = v + comm(*Ar, K(dd));
            if (!bg.exactly_flat)
                for (int e = 0; e < n; ++e) v = v - 0.5 * (bg.M(e, dd) * K(e));
            next(dd) = v;
        }
        K = std::move(next);
    }
    return jet;
}

GridField op_E1(const CurvatureJet& jet) { return jet.K.at(0); }

GridField op_E2(const CurvatureJet& jet, E2Variant v, double tol) {
    const int d = jet.d;
    if (v == E2Variant::E2_5) {
        if (d != 5) throw DomainError("op_E2: variant E2_5 needs d = 5");
        const double f = max_abs(jet.F);
        require(f < tol, "op_E2: E2_5 needs a flat boundary connection, |F| = " + std::to_string(f), f);
        return jet.K.at(1);
    }
    return sub(scale(d - 5.0, jet.K.at(1)), jet.j);
}

GridField box7(const GridField& V, const CurvatureJet& jet) {
    const BoundaryGeometry& geo = jet.geo();
    const int d = jet.d;
    GridField r = rough_laplacian(V, geo, &jet.A0);
    GridField div = divergence(V, geo, &jet.A0);
    r = sub(r, scale(2.0 / 3.0, covariant_derivative(div, geo, &jet.A0)));
    if (!geo.flat) {
        const int n = geo.n;
        for (int b = 0; b < n; ++b) {
            MField pv;
            for (int a = 0; a < n; ++a)
                for (int c = 0; c < n; ++c) pv += geo.ginv(a, c) * geo.schouten(b, c) * V(a);
            r(b) -= (2.0 * (d - 4) / 3.0) * pv;
            r(b) -= 2.0 * (geo.J * V(b));
        }
    }
    return r;
}

GridField box9_flat(const GridField& V, const CurvatureJet& jet) {
    const BoundaryGeometry& geo = jet.geo();
    GridField r = rough_laplacian(V, geo, &jet.A0);
    return sub(r, scale(0.5, covariant_derivative(divergence(V, geo, &jet.A0), geo, &jet.A0)));
}

GridField bracket_F_j(const CurvatureJet& jet) {
    const BoundaryGeometry& geo = jet.geo();
    const int n = geo.n;
    GridField r = one_form(jet);
    const auto ju = raise_slot<MField>(jet.j, geo.ginv_ptr(), 0);
    for (int dd = 0; dd < n; ++dd)
        for (int a = 0; a < n; ++a) r(dd) += comm(jet.F(a, dd), ju(a));
    return r;
}

GridField bracket_E1_divE1(const CurvatureJet& jet) {
    const GridField& E1 = jet.K.at(0);
    const GridField div = divergence(E1, jet.geo(), &jet.A0);
    GridField r = one_form(jet);
    for (int dd = 0; dd < jet.geo().n; ++dd) r(dd) = comm(E1(dd), div.c[0]);
    return r;
}

GridField khat_flat(const CurvatureJet& jet) {
    const BoundaryGeometry& geo = jet.geo();
    const int n = geo.n;
    const GridField Dj = covariant_derivative(jet.j, geo, &jet.A0);  // (a, b) = nabla_a j_b
    GridField T(jet.A0.grid, lower_slots(2), jet.A0.N, lie_meta());
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) T(a, b) = 0.5 * (Dj(a, b) - Dj(b, a));
    GridField r = scale(0.5, divergence(T, geo, &jet.A0));
    const auto ju = raise_slot<MField>(jet.j, geo.ginv_ptr(), 0);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) r(b) += 0.25 * comm(ju(a), jet.F(a, b));
    return r;
}

GridField op_E3(const CurvatureJet& jet, E3Variant v, double tol) {
    const int d = jet.d;
    if (jet.K.size() < 3) throw DomainError("op_E3: jet needs three levels");
    if (v == E3Variant::E3_7) {
        if (d != 7) throw DomainError("op_E3: variant E3_7 needs d = 7");
        const double e1 = max_abs(jet.K[0]);
        require(e1 < tol, "op_E3: E3_7 needs E1 = 0, |E1| = " + std::to_string(e1), e1);
        return jet.K[2];
    }
    if (d == 5 || d == 7) throw DomainError("op_E3: d = " + std::to_string(d) + " is a pole of the generic operator");
    return sub(jet.K[2], scale(3.0 / (d - 7), box7(jet.K[0], jet)));
}

GridField op_E4(const CurvatureJet& jet, E4Variant v, double tol) {
    const int d = jet.d;
    if (jet.K.size() < 4) throw DomainError("op_E4: jet needs four levels");
    if (!jet.geo().flat) throw DomainError("op_E4: only the flat boundary metric is supported");
    const GridField& K1 = jet.K[1];
    const GridField& K3 = jet.K[3];
    switch (v) {
        case E4Variant::FlatGeneric: {
            if (d == 4 || d == 5 || d == 7 || d == 9)
                throw DomainError("op_E4: d = " + std::to_string(d) + " needs its dedicated variant");
            GridField inner = sub(K3, scale(6.0 / (d - 9), box9_flat(K1, jet)));
            inner = add(inner, scale(8.0 / (d - 4), bracket_E1_divE1(jet)));
            inner = add(inner, scale(12.0 / ((d - 5.0) * (d - 9.0)), bracket_F_j(jet)));
            return add(scale(d - 7.0, inner), scale(12.0 / (d - 9), khat_flat(jet)));
        }
        case E4Variant::E4_4: {
            if (d != 4) throw DomainError("op_E4: variant E4_4 needs d = 4");
            const GridField& E1 = jet.K[0];
            double c = 0.0;
            for (int a = 0; a < E1.n; ++a)
                for (int b = 0; b < E1.n; ++b) c = std::max(c, max_abs(comm(E1(a), E1(b))));
            require(c < tol, "op_E4: E4_4 needs [E1_a, E1_b] = 0, defect " + std::to_string(c), c);
            GridField r = add(K3, scale(6.0 / 5.0, box9_flat(K1, jet)));
            r = add(r, scale(4.0 / 5.0, khat_flat(jet)));
            return add(r, scale(12.0 / 5.0, bracket_F_j(jet)));
        }
        case E4Variant::E4_5: {
            if (d != 5) throw DomainError("op_E4: variant E4_5 needs d = 5");
            const int n = jet.F.n;
            double c = 0.0;
            for (int dd = 0; dd < n; ++dd)
                for (int cc = 0; cc < n; ++cc) {
                    MField s;
                    for (int a = 0; a < n; ++a) s += comm(jet.F(a, dd), jet.F(a, cc));
                    c = std::max(c, max_abs(s));
                }
            require(c < tol, "op_E4: E4_5 needs [F_ad, F^a_c] = 0, defect " + std::to_string(c), c);
            GridField r = add(K3, scale(8.0, bracket_E1_divE1(jet)));
            r = add(r, scale(1.5, box9_flat(K1, jet)));
            return add(r, scale(1.5, khat_flat(jet)));
        }
        case E4Variant::E4_7: {
            if (d != 7) throw DomainError("op_E4: variant E4_7 needs d = 7");
            const double f = max_abs(jet.F);
            require(f < tol, "op_E4: E4_7 needs a flat boundary connection, |F| = " + std::to_string(f), f);
            const GridField E2n = sub(K1, scale(0.5, jet.j));
            GridField r = add(K3, scale(8.0 / 3.0, bracket_E1_divE1(jet)));
            return add(r, scale(3.0, box9_flat(E2n, jet)));
        }
        case E4Variant::E4_9: {
            if (d != 9) throw DomainError("op_E4: variant E4_9 needs d = 9");
            const double e2 = max_abs(op_E2(jet));
            require(e2 < tol * std::max(1.0, max_abs(jet.j)), "op_E4: E4_9 needs E2 = 0, |E2| = " + std::to_string(e2), e2);
            GridField r = add(K3, scale(8.0 / 5.0, bracket_E1_divE1(jet)));
            return sub(r, scale(1.5, khat_flat(jet)));
        }
    }
    throw DomainError("op_E4: unknown variant");
}

NeumannExtract neumann_extract(const ConnectionExpansion& exp, double tol) {
    const int d = exp.d();
    if (d < 4 || d > 7) throw DomainError("neumann_extract: supported for d = 4, 5, 6, 7");
    const CurvatureJet jet = curvature_jet(exp, d - 3);
    NeumannExtract r;
    switch (d) {
        case 4: r.via_operator = op_E1(jet); break;
        case 5: r.via_operator = scale(0.5, op_E2(jet, E2Variant::E2_5, tol)); break;
        case 6: r.via_operator = scale(1.0 / 6.0, op_E3(jet, E3Variant::Full, tol)); break;
        default: r.via_operator = scale(1.0 / 24.0, op_E4(jet, E4Variant::E4_7, tol)); break;
    }
    r.direct = exp.coeff(d - 3);
    r.direct.meta = r.via_operator.meta;
    r.agreement = max_abs(sub(r.via_operator, r.direct));
    r.divergence = max_abs(divergence(r.via_operator, exp.background->geo, &jet.A0));
    return r;
}

}  // namespace ccym
