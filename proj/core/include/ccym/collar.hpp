#pragma once

#include <memory>
#include <vector>

#include "ccym/field.hpp"
#include "ccym/geometry.hpp"
#include "ccym/series.hpp"
#include "ccym/tensor_ops.hpp"

namespace ccym {

// Collar metric dr^2 + h(x, r) in Graham-Lee normal form (sigma = r, n = dr, rho = 0, H = 0).
// exactly_flat: h = delta for all r (hyperbolic space). Otherwise h = g - r^2 P, known
// through r^3, which fixes every current coefficient through r^4.
struct CollarBackground {
    int d = 5;
    BoundaryGeometry geo;
    bool exactly_flat = true;
    Tensor<RSeries> h, hinv;  // hinv has both slots up
    Tensor<RSeries> gamma;    // tangential Christoffels of h(r)
    Tensor<RSeries> M;        // M(k, j) = h^{ki} d_r h_ij
    RSeries t;                // h^{kl} d_r h_kl

    static std::shared_ptr<const CollarBackground> flat(int d, const GridPtr& grid);
    static std::shared_ptr<const CollarBackground> curved(int d, const BoundaryGeometry& geo);

    int boundary_dim() const { return geo.n; }
    const GridPtr& grid() const { return geo.grid; }
    const Tensor<RSeries>* gamma_ptr() const { return exactly_flat ? nullptr : &gamma; }
    const Tensor<RSeries>* hinv_ptr() const { return exactly_flat ? nullptr : &hinv; }
    const Tensor<RSeries>* M_ptr() const { return exactly_flat ? nullptr : &M; }
};

using CollarPtr = std::shared_ptr<const CollarBackground>;

// Bulk current j = r (g^{ab} nabla_a F_bc) - (d - 4) F_rc split into the tangential
// (Ampere) and radial (Gauss) parts, as series in r. With a radial component A_r:
//   F_rj  = d_r A_j - d_j A_r + [A_r, A_j]
//   j_j   = r (D_r F_rj + hat-nabla^k F_kj + t F_rj / 2 - M^k_j F_rk) - (d - 4) F_rj
//   j_r   = -r h^{kl} (D_k F_rl - Gamma^m_kl F_rm)
struct CurrentSeries {
    Tensor<RSeries> ampere;  // one-form
    RSeries gauss;
    Tensor<RSeries> Fr;      // F_rj
    Tensor<RSeries> F;       // tangential F_ij
};

CurrentSeries current_series(const CollarBackground& bg, const Tensor<RSeries>& A, const RSeries* Ar);

// F_rj alone.
Tensor<RSeries> radial_field_strength(const Tensor<RSeries>& A, const RSeries* Ar);

// Series helpers.
Tensor<RSeries> series_from_coeffs(const std::vector<GridField>& coeffs, int n);
GridField series_coeff(const Tensor<RSeries>& T, int m, const GridPtr& grid, int N, FieldMeta meta = {});
GridField series_log_coeff(const Tensor<RSeries>& T, int m, const GridPtr& grid, int N, FieldMeta meta = {});
MField coeff_or_zero(const RSeries& s, int m, const GridPtr& grid, int N);
MField log_coeff_or_zero(const RSeries& s, int m, const GridPtr& grid, int N);

}  // namespace ccym
