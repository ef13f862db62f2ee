#include "ccym/collar.hpp"

#include "ccym/errors.hpp"

namespace ccym {

namespace {

Tensor<RSeries> constant_identity(const GridPtr& grid, int n, Slot s) {
    Tensor<RSeries> t(n, {s, s});
    for (int i = 0; i < n; ++i) t(i, i) = RSeries::constant(MField::scalar(grid, 1.0));
    return t;
}

}  // namespace

std::shared_ptr<const CollarBackground> CollarBackground::flat(int d, const GridPtr& grid) {
    if (grid->dim() != d - 1) throw ShapeError("collar: grid dimension must be d - 1");
    auto bg = std::make_shared<CollarBackground>();
    bg->d = d;
    bg->geo = flat_geometry(grid);
    bg->exactly_flat = true;
    bg->h = constant_identity(grid, grid->dim(), Slot::Lower);
    bg->hinv = constant_identity(grid, grid->dim(), Slot::Upper);
    return bg;
}

std::shared_ptr<const CollarBackground> CollarBackground::curved(int d, const BoundaryGeometry& geo) {
    if (geo.n != d - 1) throw ShapeError("collar: boundary geometry dimension must be d - 1");
    if (geo.flat) return flat(d, geo.grid);
    auto bg = std::make_shared<CollarBackground>();
    bg->d = d;
    bg->geo = geo;
    bg->exactly_flat = false;
    const int n = geo.n;
    constexpr int known = 3;
    // h = g - r^2 P; inverse by the Neumann series in r.
    std::vector<Tensor<MField>> hc(known + 1, Tensor<MField>(n, lower_slots(2)));
    hc[0] = geo.g;
    hc[2] = -1.0 * geo.schouten;
    std::vector<Tensor<MField>> ic(known + 1, Tensor<MField>(n, {Slot::Upper, Slot::Upper}));
    ic[0] = geo.ginv;
    for (int m = 1; m <= known; ++m)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                MField v;
                for (int j = 1; j <= m; ++j)
                    for (int c = 0; c < n; ++c)
                        for (int e = 0; e < n; ++e) {
                            if (hc[j](c, e).is_zero() || ic[m - j](e, b).is_zero()) continue;
                            v -= geo.ginv(a, c) * hc[j](c, e) * ic[m - j](e, b);
                        }
                ic[m](a, b) = v;
            }
    bg->h = Tensor<RSeries>(n, lower_slots(2));
    bg->hinv = Tensor<RSeries>(n, {Slot::Upper, Slot::Upper});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            std::vector<MField> hv, iv;
            for (int m = 0; m <= known; ++m) {
                hv.push_back(hc[m](a, b));
                iv.push_back(ic[m](a, b));
            }
            bg->h(a, b) = RSeries::truncated(hv, known);
            bg->hinv(a, b) = RSeries::truncated(iv, known);
        }
    bg->gamma = christoffel(bg->h, bg->hinv);
    Tensor<RSeries> dh(n, lower_slots(2));
    for (std::size_t i = 0; i < dh.size(); ++i) dh.c[i] = bg->h.c[i].dr();
    bg->M = Tensor<RSeries>(n, {Slot::Upper, Slot::Lower});
    for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) {
            RSeries v;
            for (int i = 0; i < n; ++i) v = v + bg->hinv(k, i) * dh(i, j);
            bg->M(k, j) = v;
        }
    RSeries t;
    for (int k = 0; k < n; ++k) t = t + bg->M(k, k);
    bg->t = t;
    return bg;
}

Tensor<RSeries> radial_field_strength(const Tensor<RSeries>& A, const RSeries* Ar) {
    Tensor<RSeries> Fr(A.n, lower_slots(1));
    for (int j = 0; j < A.n; ++j) {
        RSeries v = A(j).dr();
        if (Ar) v = v - partial(*Ar, j) + comm(*Ar, A(j));
        Fr(j) = v;
    }
    return Fr;
}

CurrentSeries current_series(const CollarBackground& bg, const Tensor<RSeries>& A, const RSeries* Ar) {
    if (A.rank() != 1 || A.n != bg.boundary_dim()) throw ShapeError("current_series: connection must be a one-form on the boundary");
    const int n = A.n;
    CurrentSeries out;
    out.F = gauge_curvature_t(A);
    out.Fr = radial_field_strength(A, Ar);
    const Tensor<RSeries>& Fr = out.Fr;

    Tensor<RSeries> divF = metric_contract(cov_deriv(out.F, bg.gamma_ptr(), &A), bg.hinv_ptr(), 0, 1);
    out.ampere = Tensor<RSeries>(n, lower_slots(1));
    for (int j = 0; j < n; ++j) {
        RSeries inner = Fr(j).dr() + divF(j);
        if (Ar) inner = inner + comm(*Ar, Fr(j));
        if (!bg.exactly_flat) {
            inner = inner + 0.5 * (bg.t * Fr(j));
            for (int k = 0; k < n; ++k) inner = inner - bg.M(k, j) * Fr(k);
        }
        out.ampere(j) = inner.shift(1) - static_cast<double>(bg.d - 4) * Fr(j);
    }

    Tensor<RSeries> divFr = metric_contract(cov_deriv(Fr, bg.gamma_ptr(), &A), bg.hinv_ptr(), 0, 1);
    out.gauss = -1.0 * divFr.c[0].shift(1);
    return out;
}

Tensor<RSeries> series_from_coeffs(const std::vector<GridField>& coeffs, int n) {
    Tensor<RSeries> t(n, lower_slots(1));
    for (int j = 0; j < n; ++j) {
        std::vector<MField> v;
        v.reserve(coeffs.size());
        for (const auto& c : coeffs) v.push_back(c(j));
        t(j) = RSeries::polynomial(std::move(v));
    }
    return t;
}

namespace {

MField shaped(MField x, const GridPtr& grid, int N) {
    if (x.is_zero()) return MField(grid, N);
    if (x.n() == N) return x;
    if (x.n() == 1) return x * MField::identity(grid, N);
    throw ShapeError("series coefficient has an unexpected matrix size");
}

}  // namespace

MField coeff_or_zero(const RSeries& s, int m, const GridPtr& grid, int N) { return shaped(s.coeff(m), grid, N); }

MField log_coeff_or_zero(const RSeries& s, int m, const GridPtr& grid, int N) { return shaped(s.log_coeff(m), grid, N); }

GridField series_coeff(const Tensor<RSeries>& T, int m, const GridPtr& grid, int N, FieldMeta meta) {
    GridField f(grid, T.slots, N, meta);
    for (std::size_t i = 0; i < T.size(); ++i) f.c[i] = coeff_or_zero(T.c[i], m, grid, N);
    return f;
}

GridField series_log_coeff(const Tensor<RSeries>& T, int m, const GridPtr& grid, int N, FieldMeta meta) {
    GridField f(grid, T.slots, N, meta);
    for (std::size_t i = 0; i < T.size(); ++i) f.c[i] = log_coeff_or_zero(T.c[i], m, grid, N);
    return f;
}

}  // namespace ccym
