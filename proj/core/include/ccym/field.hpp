#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ccym/mfield.hpp"
#include "ccym/tensor.hpp"

namespace ccym {

struct FieldMeta {
    bool lie = false;           // values are anti-Hermitian Lie-algebra elements
    std::optional<int> weight;  // conformal weight tag; checked when combining
};

// Tensor of matrix fields on one grid. Every component is allocated.
struct GridField : Tensor<MField> {
    GridPtr grid;
    int N = 1;
    FieldMeta meta;

    GridField() = default;
    GridField(GridPtr g, std::vector<Slot> s, int matrix_dim, FieldMeta m = {});
    // Wrap a tensor, materializing exact-zero components.
    GridField(const Tensor<MField>& t, GridPtr g, int matrix_dim, FieldMeta m = {});

    static GridField scalar(const MField& f, FieldMeta m = {});
};

GridField add(const GridField& a, const GridField& b);
GridField sub(const GridField& a, const GridField& b);
GridField scale(double s, const GridField& a);

enum class Group { U1, SUN };

// Group tag and generator convention: u1 uses the single generator i (N = 1);
// su(N) uses i times the generalized Gell-Mann matrices, so Tr(T_a T_b) = -2 delta_ab
// (for N = 2 these are i*sigma_1, i*sigma_2, i*sigma_3).
struct LieAlgebraSpec {
    Group group = Group::U1;
    int N = 1;

    static LieAlgebraSpec u1() { return {Group::U1, 1}; }
    static LieAlgebraSpec su(int n) { return {Group::SUN, n}; }
    static LieAlgebraSpec parse(const std::string& tag);
    std::string tag() const;

    int dimension() const;
    // Row-major N x N matrices.
    std::vector<std::vector<cplx>> generators() const;
};

// field-core operations
GridField spectral_partial(const GridField& f, int axis);
GridField lie_bracket(const GridField& x, const GridField& y);
// Periodic trapezoidal sum of f * density; pairwise (fixed-order) reduction.
cplx integrate(const MField& f, const MField& density);
cplx integrate(const MField& f);  // unit density

// Deterministic pairwise sum.
cplx pairwise_sum(const cplx* v, std::size_t n);
double pairwise_sum(const double* v, std::size_t n);

double max_abs(const GridField& f);
double rms(const GridField& f);  // sqrt(sum over components of rms^2)
double antihermitian_defect(const GridField& f);

// Deterministic random numbers: std::mt19937_64 seeded with `seed`, each draw
// mapped to [-1, 1) as 2*((x >> 11) * 2^-53) - 1.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform() { return 2.0 * (static_cast<double>(eng_() >> 11) * 0x1.0p-53) - 1.0; }

private:
    std::mt19937_64 eng_;
};

// Band-limited real function: sum over integer modes m with |m_a| <= cutoff on
// the listed axes (zero elsewhere) of alpha_m cos(theta) + beta_m sin(theta),
// theta = sum_a 2 pi m_a x_a / L_a. Modes are visited lexicographically over the
// active axes (each from -cutoff to cutoff); alpha then beta are drawn per mode and
// scaled by amplitude / sqrt(#modes).
MField random_band_limited(const GridPtr& g, Rng& rng, int cutoff, double amplitude, const std::vector<int>& axes);

// Random Lie-algebra-valued one-form: for each component i and generator a (in that
// nesting order) draw a band-limited coefficient function.
GridField random_connection(const GridPtr& g, const LieAlgebraSpec& lie, std::uint64_t seed, int cutoff,
                            double amplitude, const std::vector<int>& axes);

// One Fourier term amp * cos|sin(2 pi m.x / L).
struct FourierTerm {
    double amp = 0.0;
    std::vector<int> mode;
    bool sine = true;
};
MField fourier_sum(const GridPtr& g, const std::vector<FourierTerm>& terms);

}  // namespace ccym
