#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccym/collar.hpp"

namespace ccym {

// A(x, r) = sum_m coeffs[m] r^m (+ log_coeff r^(d-3) log r) in temporal gauge.
// `radial` holds the r-coefficients of A_r; it is empty in temporal gauge and is only
// filled by gauge_transform. Coefficients past max_order() are taken to be zero.
struct ConnectionExpansion {
    CollarPtr background;
    LieAlgebraSpec lie;
    std::vector<GridField> coeffs;
    std::vector<MField> radial;
    std::optional<GridField> log_coeff;
    std::string l_choice = "L = 0";

    int d() const { return background->d; }
    int N() const { return coeffs.at(0).N; }
    const GridPtr& grid() const { return background->grid(); }
    int max_order() const { return static_cast<int>(coeffs.size()) - 1; }
    // Coefficient m, or an allocated zero past max_order.
    GridField coeff(int m) const;

    Tensor<RSeries> series(int upto) const;      // tangential part truncated at r^upto
    std::optional<RSeries> radial_series(int upto) const;
};

ConnectionExpansion magnetic_expand(const CollarPtr& bg, const GridField& A0, int max_order,
                                    const LieAlgebraSpec& lie = LieAlgebraSpec::u1());

struct Residual {
    int order = 0;
    GridField gauss;       // N x N valued scalar
    GridField ampere;      // one-form
    GridField gauss_log;   // coefficients of r^order log r
    GridField ampere_log;
};

// Coefficient of r^order in the Gauss and Ampere parts of the current.
Residual residual(const ConnectionExpansion& exp, int order);

struct ObstructionCurrent {
    int d = 0;
    GridField kbar;  // weight 3 - d
};

ObstructionCurrent obstruction_extract(const ConnectionExpansion& exp);

// K with r^(d-3) (K log r + L) cancelling the r^(d-4) Ampere residual: K = -kbar / (d - 3).
GridField log_coefficient(const ObstructionCurrent& k);
ConnectionExpansion with_log_term(ConnectionExpansion exp, const GridField& K);

// Neumann data: A^(d-3) = E / (d - 3), then continue to max_order. Flat collars only.
ConnectionExpansion electric_continue(const ConnectionExpansion& exp, const GridField& E, int max_order,
                                      double tol = 1e-8);

// U = sum_m U_m r^m with U_0 invertible. A -> U^{-1} A U + U^{-1} dU including A_r.
ConnectionExpansion gauge_transform(const ConnectionExpansion& exp, const std::vector<MField>& U);

// Pointwise inverse of an N x N field; throws if some matrix is singular.
MField pointwise_inverse(const MField& U);

}  // namespace ccym
