#pragma once

#include <string>
#include <vector>

#include "ccym/expansion.hpp"

namespace ccym {

// d = 5: j. d = 6: 0. d = 7:
//   (1/2) nabla^a (nabla_[a j_b] - 4 P_[a^c F_b]c - J F_ab) + (1/4) [j^a, F_ab].
ObstructionCurrent obstruction_closed_form(int d, const GaugeData& data, const BoundaryGeometry& geo);

// d = 5: -(1/4) Tr F^2.
// d = 7: -(1/32) Lap Tr F^2 - (1/8) Tr(j^2 - J F^2 + 2 F^{ab} nabla_[a j_b] - 4 F^{ab} P_a^c F_bc).
GridField energy_density_Q(int d, const GaugeData& data, const BoundaryGeometry& geo);
// d = 7 density after integration by parts: (1/8) Tr(j^2 + J F^2 + 4 F^{ab} P_a^c F_bc).
GridField energy_density_Q_reduced(int d, const GaugeData& data, const BoundaryGeometry& geo);

// integral of Q dVol (real part).
double energy(const GridField& Q, const BoundaryGeometry& geo);

// f = -(1/4) Tr F^2 of the compactified metric dr^2 + h as a series, known through r^upto.
RSeries action_density_series(const ConnectionExpansion& exp, int upto);

// Flat-collar Laplace-Robin operator on a weight-w series:
// (I.D f)_k = (d + 2w - 2)(k + 1) f_(k+1) - (k + 1) k f_(k+1) - Lap f_(k-1).
RSeries laplace_robin_flat(const RSeries& f, int d, int w);

// 3!/((d-5)!(d-2)!) integral of [(I.D)^(d-5) f]|_(r=0); weights -4, -5, ...
double holographic_energy(const ConnectionExpansion& exp);

enum class EnergyMethod { ClosedFormQ, Holographic };
EnergyMethod parse_energy_method(const std::string& s);

// Energy of the boundary connection A0 through the full pipeline.
double energy_of(const CollarPtr& bg, const GridField& A0, const LieAlgebraSpec& lie, EnergyMethod m);

struct GradientDirection {
    double fd = 0.0;        // (En[A + h v] - En[A - h v]) / 2h
    double fd_half = 0.0;   // same with h / 2
    double pairing = 0.0;   // integral Tr(g^{ab} k_a v_b) dVol
    double ratio = 0.0;     // fd / pairing
};

struct GradientReport {
    std::vector<GradientDirection> directions;
    double ratio_mean = 0.0;
    double ratio_spread = 0.0;  // max |ratio - mean| / |mean|
    double orthogonal_fd = 0.0;
    double orthogonal_rel = 0.0;  // |orthogonal fd| / max |fd|
    double linearity = 0.0;       // |fd(2v) - 2 fd(v)| / |2 fd(v)| for the first direction
    double step = 0.0;
};

GradientReport functional_gradient_check(const CollarPtr& bg, const GridField& A0, const LieAlgebraSpec& lie,
                                         const std::vector<GridField>& directions, double h, EnergyMethod m);

}  // namespace ccym
