#pragma once

#include <string>
#include <vector>

#include "ccym/expansion.hpp"

namespace ccym {

// Transverse jets of the radial field strength at r = 0 in the normal-form chart:
// K[0] = F_r., K[m+1]_d = d_r K[m]_d + [A_r, K[m]_d] - M^e_d K[m]_e / 2 (M = h^{-1} d_r h).
// With a flat collar K[m] = (m+1)! A^(m+1).
struct CurvatureJet {
    int d = 0;
    CollarPtr background;
    GridField A0, F, j;
    std::vector<GridField> K;

    const BoundaryGeometry& geo() const { return background->geo; }
};

CurvatureJet curvature_jet(const ConnectionExpansion& exp, int levels = 4);

enum class E2Variant { Check, E2_5 };
enum class E3Variant { Full, E3_7 };
enum class E4Variant { FlatGeneric, E4_4, E4_5, E4_7, E4_9 };

E2Variant parse_e2_variant(const std::string& s);
E3Variant parse_e3_variant(const std::string& s);
E4Variant parse_e4_variant(const std::string& s);

GridField op_E1(const CurvatureJet& jet);
// Check: (d - 5) K1 - j. E2_5: K1 (d = 5, flat boundary connection).
GridField op_E2(const CurvatureJet& jet, E2Variant v = E2Variant::Check, double tol = 1e-8);
// Full: K2 - 3/(d - 7) box7(K0). E3_7: K2 (d = 7, E1 = 0).
GridField op_E3(const CurvatureJet& jet, E3Variant v = E3Variant::Full, double tol = 1e-8);
// Flat boundary metric only.
GridField op_E4(const CurvatureJet& jet, E4Variant v = E4Variant::FlatGeneric, double tol = 1e-8);

// box7 V = Lap V - (2/3) grad div V - (2(d-4)/3) P.V - 2 J V (gauge covariant, curved metric).
GridField box7(const GridField& V, const CurvatureJet& jet);
// Flat box9 V = Lap V - (1/2) grad div V.
GridField box9_flat(const GridField& V, const CurvatureJet& jet);
// (1/2) nabla^a nabla_[a j_b] + (1/4) [j^a, F_ab] on a flat metric.
GridField khat_flat(const CurvatureJet& jet);
// sum_a [F_ad, j^a]
GridField bracket_F_j(const CurvatureJet& jet);
// [E1_d, nabla^a E1_a]
GridField bracket_E1_divE1(const CurvatureJet& jet);

struct NeumannExtract {
    GridField via_operator;  // E^(d-3) / (d-3)!
    GridField direct;        // A^(d-3)
    double agreement = 0.0;  // max |via - direct|
    double divergence = 0.0; // max |nabla^A . via|
};

NeumannExtract neumann_extract(const ConnectionExpansion& exp, double tol = 1e-8);

}  // namespace ccym
