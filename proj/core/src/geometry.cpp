#include "ccym/geometry.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "ccym/errors.hpp"

namespace ccym {

namespace {

Tensor<MField> identity_metric(const GridPtr& grid) {
    const int n = grid->dim();
    Tensor<MField> g(n, lower_slots(2));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = (i == j) ? MField::scalar(grid, 1.0) : MField(grid, 1);
    return g;
}

Tensor<MField> zeros(const GridPtr& grid, int rank) {
    Tensor<MField> t(grid->dim(), lower_slots(rank));
    for (auto& x : t.c) x = MField(grid, 1);
    return t;
}

bool is_identity(const GridField& g) {
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            for (const auto& v : g(i, j).data())
                if (std::abs(v - cplx(i == j ? 1.0 : 0.0)) > 1e-15) return false;
    return true;
}

Tensor<MField> materialize(Tensor<MField> t, const GridPtr& grid) {
    for (auto& x : t.c)
        if (x.is_zero()) x = MField(grid, 1);
    return t;
}

}  // namespace

BoundaryGeometry flat_geometry(const GridPtr& grid) {
    BoundaryGeometry geo;
    geo.grid = grid;
    geo.n = grid->dim();
    geo.flat = true;
    geo.g = identity_metric(grid);
    geo.ginv = identity_metric(grid);
    geo.ginv.slots = {Slot::Upper, Slot::Upper};
    geo.gamma = zeros(grid, 3);
    geo.gamma.slots = {Slot::Upper, Slot::Lower, Slot::Lower};
    geo.riemann = zeros(grid, 4);
    geo.ricci = zeros(grid, 2);
    geo.schouten = zeros(grid, 2);
    geo.J = MField(grid, 1);
    geo.cotton = zeros(grid, 3);
    geo.weyl = zeros(grid, 4);
    geo.volume = MField::scalar(grid, 1.0);
    return geo;
}

GridField conformally_flat_metric(const MField& phi) {
    if (phi.is_zero() || phi.n() != 1) throw ShapeError("conformally_flat_metric: phi must be an N = 1 field");
    const GridPtr& grid = phi.grid();
    GridField g(grid, lower_slots(2), 1);
    MField e2 = map_scalar(phi, [](cplx x) { return std::exp(2.0 * x.real()); });
    for (int i = 0; i < grid->dim(); ++i) g(i, i) = e2;
    return g;
}

BoundaryGeometry curvature_package(const GridField& metric, CurvatureOptions opt) {
    if (metric.rank() != 2 || metric.slots != lower_slots(2)) throw ShapeError("curvature_package: metric must be a covariant rank-2 field");
    if (metric.N != 1) throw ShapeError("curvature_package: metric must be scalar-valued (N = 1)");
    const GridPtr& grid = metric.grid;
    const int n = grid->dim();
    double scale = max_abs(metric);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (max_abs(metric(i, j) - metric(j, i)) > 1e-12 * scale) throw DomainError("curvature_package: metric is not symmetric");
    if (is_identity(metric)) return flat_geometry(grid);

    BoundaryGeometry geo;
    geo.grid = grid;
    geo.n = n;
    geo.g = metric;
    geo.ginv = Tensor<MField>(n, {Slot::Upper, Slot::Upper});
    for (auto& x : geo.ginv.c) x = MField(grid, 1);
    geo.volume = MField(grid, 1);
    Eigen::MatrixXd m(n, n);
    for (std::size_t p = 0; p < grid->size(); ++p) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const cplx v = metric(i, j).at(p);
                if (std::abs(v.imag()) > 1e-12 * scale) throw DomainError("curvature_package: metric must be real");
                m(i, j) = v.real();
            }
        Eigen::LLT<Eigen::MatrixXd> llt(m);
        if (llt.info() != Eigen::Success) throw DomainError("curvature_package: metric not positive definite at point " + std::to_string(p));
        const Eigen::MatrixXd inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) geo.ginv(i, j).at(p) = inv(i, j);
        double logdet = 0.0;
        for (int i = 0; i < n; ++i) logdet += std::log(llt.matrixL()(i, i));
        geo.volume.at(p) = std::exp(logdet);
    }
    geo.gamma = materialize(christoffel(geo.g, geo.ginv), grid);

    const Tensor<MField>& G = geo.gamma;
    // mixed(a,b,c,d) = R_ab^c_d for one antisymmetric pair (a,b).
    auto mixed = [&](int a, int b, int c, int d) {
        MField v = partial(G(c, b, d), a) - partial(G(c, a, d), b);
        for (int e = 0; e < n; ++e) v += G(c, a, e) * G(e, b, d) - G(c, b, e) * G(e, a, d);
        return v;
    };

    geo.ricci = zeros(grid, 2);
    if (opt.riemann) {
        Tensor<MField> R(n, lower_slots(4));
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                std::vector<MField> rm(static_cast<std::size_t>(n) * n);
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) rm[c * n + d] = mixed(a, b, c, d);
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d) {
                        MField v(grid, 1);
                        for (int e = 0; e < n; ++e) v += geo.g(c, e) * rm[e * n + d];
                        R(b, a, c, d) = -v;
                        R(a, b, c, d) = std::move(v);
                    }
            }
        for (int a = 0; a < n; ++a)
            for (int c = 0; c < n; ++c) R(a, a, c, a) = MField(grid, 1);
        for (auto& x : R.c)
            if (x.is_zero()) x = MField(grid, 1);
        // Ric_bd = g^{ac} R_abcd (equivalent to -R_ac^c_b after index moves).
        for (int b = 0; b < n; ++b)
            for (int d = b; d < n; ++d) {
                MField v(grid, 1);
                for (int a = 0; a < n; ++a)
                    for (int c = 0; c < n; ++c) v += geo.ginv(a, c) * R(a, b, c, d);
                geo.ricci(b, d) = v;
                geo.ricci(d, b) = v;
            }
        geo.riemann = std::move(R);
    } else {
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                MField v(grid, 1);
                for (int c = 0; c < n; ++c)
                    if (c != a) v -= mixed(a, c, c, b);
                geo.ricci(a, b) = v;
                geo.ricci(b, a) = v;
            }
    }

    MField sc(grid, 1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) sc += geo.ginv(a, b) * geo.ricci(a, b);
    geo.schouten = zeros(grid, 2);
    if (n >= 3) {
        geo.J = (1.0 / (2.0 * (n - 1))) * sc;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) geo.schouten(a, b) = (1.0 / (n - 2)) * (geo.ricci(a, b) - geo.g(a, b) * geo.J);
    } else if (n == 2) {
        geo.J = 0.5 * sc;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) geo.schouten(a, b) = 0.5 * (geo.g(a, b) * geo.J);
    } else {
        geo.J = MField(grid, 1);
    }

    Tensor<MField> dP = cov_deriv(geo.schouten, &geo.gamma, static_cast<const Tensor<MField>*>(nullptr));
    geo.cotton = zeros(grid, 3);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) geo.cotton(a, b, c) = dP(a, b, c) - dP(b, a, c);

    if (opt.riemann) {
        const Tensor<MField>& g = geo.g;
        const Tensor<MField>& P = geo.schouten;
        Tensor<MField> W = *geo.riemann;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    for (int d = 0; d < n; ++d)
                        W(a, b, c, d) -= g(a, c) * P(b, d) - g(b, c) * P(a, d) + g(b, d) * P(a, c) - g(a, d) * P(b, c);
        geo.weyl = std::move(W);
    }
    return geo;
}

GridField gauge_curvature(const GridField& A) {
    if (A.rank() != 1 || A.slots[0] != Slot::Lower) throw ShapeError("gauge_curvature: expects a covariant one-form");
    return GridField(gauge_curvature_t<MField>(A), A.grid, A.N, FieldMeta{A.meta.lie, std::nullopt});
}

GridField covariant_derivative(const GridField& T, const BoundaryGeometry& geo, const GridField* A) {
    if (!same_grid(T.grid, geo.grid)) throw ShapeError("covariant_derivative: mismatched grid");
    const Tensor<MField>* conn = nullptr;
    if (A) {
        if (!same_grid(A->grid, T.grid)) throw ShapeError("covariant_derivative: connection on another grid");
        if (A->N == T.N && T.N > 1) conn = A;
    }
    auto r = cov_deriv<MField>(T, geo.gamma_ptr(), conn);
    return GridField(r, T.grid, T.N, FieldMeta{T.meta.lie, std::nullopt});
}

GridField divergence(const GridField& T, const BoundaryGeometry& geo, const GridField* A) {
    if (T.rank() < 1) throw ShapeError("divergence: needs rank >= 1");
    GridField d = covariant_derivative(T, geo, A);
    auto r = metric_contract<MField>(d, geo.ginv_ptr(), 0, 1);
    return GridField(r, T.grid, T.N, FieldMeta{T.meta.lie, std::nullopt});
}

GridField ym_current(const GridField& F, const BoundaryGeometry& geo, const GridField& A) {
    if (F.rank() != 2) throw ShapeError("ym_current: F must be a two-form");
    if (!same_grid(F.grid, A.grid)) throw ShapeError("ym_current: inconsistent grids");
    return divergence(F, geo, &A);
}

GaugeData gauge_data(const GridField& A, const BoundaryGeometry& geo) {
    GaugeData d;
    d.A = A;
    d.F = gauge_curvature(A);
    d.j = ym_current(d.F, geo, A);
    return d;
}

GridField rough_laplacian(const GridField& T, const BoundaryGeometry& geo, const GridField* A) {
    GridField d1 = covariant_derivative(T, geo, A);
    GridField d2 = covariant_derivative(d1, geo, A);
    auto r = metric_contract<MField>(d2, geo.ginv_ptr(), 0, 1);
    return GridField(r, T.grid, T.N, FieldMeta{T.meta.lie, std::nullopt});
}

MField pair_one_forms(const GridField& X, const GridField& Y, const BoundaryGeometry& geo) {
    MField s;
    const int n = geo.n;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (geo.flat) {
                if (a == b) s += X(a) * Y(b);
            } else {
                s += geo.ginv(a, b) * (X(a) * Y(b));
            }
        }
    if (s.is_zero()) s = MField(geo.grid, std::max(X.N, Y.N));
    return s;
}

MField pair_two_forms(const GridField& X, const GridField& Y, const BoundaryGeometry& geo) {
    const int n = geo.n;
    MField s;
    if (geo.flat) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += X(a, b) * Y(a, b);
    } else {
        // (X^{cd}) = g^{ca} g^{db} X_ab, then contract.
        auto Xr = raise_slot<MField>(raise_slot<MField>(X, &geo.ginv, 0), &geo.ginv, 1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) s += Xr(a, b) * Y(a, b);
    }
    if (s.is_zero()) s = MField(geo.grid, std::max(X.N, Y.N));
    return s;
}

double trace_pairing(const GridField& X, const GridField& Y, const BoundaryGeometry& geo) {
    return integrate(trace(pair_one_forms(X, Y, geo)), geo.volume).real();
}

GridField conjugate(const GridField& X, const MField& U, const MField& Uinv) {
    GridField r = X;
    for (auto& x : r.c) x = Uinv * x * U;
    return r;
}

GridField gauge_transform_connection(const GridField& A, const MField& U, const MField& Uinv) {
    GridField r = A;
    for (int i = 0; i < A.n; ++i) {
        MField v = Uinv * A(i) * U;
        v += Uinv * partial(U, i);
        r(i) = v;
    }
    return r;
}

}  // namespace ccym
