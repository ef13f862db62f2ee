#pragma once

#include <optional>

#include "ccym/field.hpp"
#include "ccym/tensor_ops.hpp"

namespace ccym {

// Curvature package of a boundary metric. Conventions:
//   [nabla_a, nabla_b] v^c = R_ab^c_d v^d,   Ric_ab = -R_ac^c_b,
//   R_abcd = g_ce R_ab^e_d,   Ric = (n-2) P + g J with n = boundary_dim,
//   R_abcd = W_abcd + g_ac P_bd - g_bc P_ad + g_bd P_ac - g_ad P_bc,
//   C_abc = nabla_a P_bc - nabla_b P_ac.
// All tensors are N = 1 fields with every index down unless noted.
struct BoundaryGeometry {
    GridPtr grid;
    int n = 0;
    bool flat = false;                 // metric is the identity at every point
    Tensor<MField> g, ginv;            // ginv has both indices up
    Tensor<MField> gamma;              // gamma(k,i,j) = Gamma^k_ij
    std::optional<Tensor<MField>> riemann;  // R(a,b,c,d) = R_abcd
    Tensor<MField> ricci, schouten;
    MField J;
    Tensor<MField> cotton;                 // C(a,b,c)
    std::optional<Tensor<MField>> weyl;    // W(a,b,c,d)
    MField volume;                         // sqrt(det g)

    const Tensor<MField>* gamma_ptr() const { return flat ? nullptr : &gamma; }
    const Tensor<MField>* ginv_ptr() const { return flat ? nullptr : &ginv; }
};

struct CurvatureOptions {
    bool riemann = true;  // keep R_abcd and W_abcd (n^4 components each)
};

BoundaryGeometry flat_geometry(const GridPtr& grid);
// g = exp(2 phi) delta.
GridField conformally_flat_metric(const MField& phi);
BoundaryGeometry curvature_package(const GridField& metric, CurvatureOptions opt = {});

struct GaugeData {
    GridField A;  // one-form
    GridField F;  // two-form
    GridField j;  // one-form, j_b = g^{ac} nabla_a F_cb
};

GridField gauge_curvature(const GridField& A);
GridField ym_current(const GridField& F, const BoundaryGeometry& geo, const GridField& A);
GaugeData gauge_data(const GridField& A, const BoundaryGeometry& geo);

// Adds one covariant slot in front. A may be null for no gauge coupling.
GridField covariant_derivative(const GridField& T, const BoundaryGeometry& geo, const GridField* A);

// Helpers used by closed-form formulas.
// Gauge-covariant divergence on the first slot: g^{ab} nabla_a T_{b...}.
GridField divergence(const GridField& T, const BoundaryGeometry& geo, const GridField* A);
// Rough Laplacian g^{ab} nabla_a nabla_b T.
GridField rough_laplacian(const GridField& T, const BoundaryGeometry& geo, const GridField* A);
// Pairing sum g^{ab} X_a Y_b (pointwise matrix product, X on the left).
MField pair_one_forms(const GridField& X, const GridField& Y, const BoundaryGeometry& geo);
// Full contraction g^{ac} g^{bd} X_ab Y_cd.
MField pair_two_forms(const GridField& X, const GridField& Y, const BoundaryGeometry& geo);
// integral of Tr(g^{ab} X_a Y_b) dVol, real part.
double trace_pairing(const GridField& X, const GridField& Y, const BoundaryGeometry& geo);

// Gauge transformation of a boundary connection by a pointwise invertible U:
// A -> U^{-1} A U + U^{-1} dU.
GridField gauge_transform_connection(const GridField& A, const MField& U, const MField& Uinv);
// X -> U^{-1} X U componentwise.
GridField conjugate(const GridField& X, const MField& U, const MField& Uinv);

}  // namespace ccym
