#include "ccym/expansion.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "ccym/errors.hpp"

namespace ccym {

namespace {

FieldMeta lie_meta() { return FieldMeta{true, std::nullopt}; }

void check_one_form(const GridField& A, const GridPtr& grid, const char* who) {
    if (A.rank() != 1 || A.slots[0] != Slot::Lower) throw ShapeError(std::string(who) + ": expects a covariant one-form");
    if (!same_grid(A.grid, grid)) throw ShapeError(std::string(who) + ": field lives on another grid");
}

}  // namespace

GridField ConnectionExpansion::coeff(int m) const {
    if (m >= 0 && m <= max_order()) return coeffs[m];
    return GridField(grid(), lower_slots(1), N(), lie_meta());
}

Tensor<RSeries> ConnectionExpansion::series(int upto) const {
    const int n = background->boundary_dim();
    std::vector<GridField> cs(coeffs.begin(), coeffs.begin() + std::min(max_order(), upto) + 1);
    Tensor<RSeries> t = series_from_coeffs(cs, n);
    const int lp = d() - 3;
    if (log_coeff && lp <= upto)
        for (int j = 0; j < n; ++j) t(j).log_coeff_ref(lp) = (*log_coeff)(j);
    for (auto& s : t.c) s.set_order(upto);
    return t;
}

std::optional<RSeries> ConnectionExpansion::radial_series(int upto) const {
    if (radial.empty()) return std::nullopt;
    std::vector<MField> v(radial.begin(), radial.begin() + std::min<int>(static_cast<int>(radial.size()) - 1, upto) + 1);
    return RSeries::truncated(std::move(v), upto);
}

Residual residual(const ConnectionExpansion& exp, int order) {
    if (order < 0) throw DomainError("residual: negative order");
    const auto A = exp.series(order + 1);
    const auto Ar = exp.radial_series(order + 1);
    CurrentSeries cs = current_series(*exp.background, A, Ar ? &*Ar : nullptr);
    Residual r;
    r.order = order;
    const GridPtr& g = exp.grid();
    const int N = exp.N();
    try {
        r.ampere = series_coeff(cs.ampere, order, g, N, lie_meta());
        r.ampere_log = series_log_coeff(cs.ampere, order, g, N, lie_meta());
        r.gauss = GridField::scalar(coeff_or_zero(cs.gauss, order, g, N), lie_meta());
        r.gauss_log = GridField::scalar(log_coeff_or_zero(cs.gauss, order, g, N), lie_meta());
    } catch (const DomainError&) {
        throw DomainError("residual: order " + std::to_string(order) + " lies beyond the truncation validity of the background metric");
    }
    return r;
}

ConnectionExpansion magnetic_expand(const CollarPtr& bg, const GridField& A0, int max_order, const LieAlgebraSpec& lie) {
    const int d = bg->d;
    check_one_form(A0, bg->grid(), "magnetic_expand");
    if (A0.N != lie.N) throw ShapeError("magnetic_expand: matrix size does not match the gauge group");
    if (d < 3) throw DomainError("magnetic_expand: d must be at least 3");
    if (max_order < 0) throw DomainError("magnetic_expand: max_order must be non-negative");
    if (d >= 4 && max_order >= d - 3)
        throw ResonanceError("magnetic_expand: the r^" + std::to_string(d - 3) +
                                 " coefficient is not determined; the r^" + std::to_string(d - 4) +
                                 " residual is the obstruction (use obstruction_extract / log_coefficient)",
                             d - 4);
    if (!bg->exactly_flat && max_order - 1 > 4)
        throw DomainError("magnetic_expand: curved collars carry h only through r^2; max_order must be <= 5");
    ConnectionExpansion exp;
    exp.background = bg;
    exp.lie = lie;
    exp.coeffs.push_back(A0);
    exp.coeffs[0].meta = FieldMeta{true, 0};
    for (int k = 0; k < max_order; ++k) {
        exp.coeffs.push_back(GridField(bg->grid(), lower_slots(1), A0.N, lie_meta()));
        const Residual r = residual(exp, k);
        exp.coeffs[k + 1] = scale(-1.0 / ((k + 1.0) * (k - d + 4.0)), r.ampere);
        exp.coeffs[k + 1].meta = lie_meta();
    }
    return exp;
}

ObstructionCurrent obstruction_extract(const ConnectionExpansion& exp) {
    const int d = exp.d();
    if (d < 4) throw DomainError("obstruction_extract: needs d >= 4");
    if (exp.max_order() < d - 4)
        throw DomainError("obstruction_extract: expansion must reach r^" + std::to_string(d - 4) + " (has " +
                          std::to_string(exp.max_order()) + ")");
    ConnectionExpansion plain = exp;
    plain.log_coeff.reset();
    ObstructionCurrent k;
    k.d = d;
    k.kbar = residual(plain, d - 4).ampere;
    k.kbar.meta = FieldMeta{true, 3 - d};
    return k;
}

GridField log_coefficient(const ObstructionCurrent& k) {
    if (k.d < 5) throw DomainError("log_coefficient: needs d >= 5");
    GridField K = scale(-1.0 / (k.d - 3), k.kbar);
    K.meta = lie_meta();
    return K;
}

ConnectionExpansion with_log_term(ConnectionExpansion exp, const GridField& K) {
    check_one_form(K, exp.grid(), "with_log_term");
    exp.log_coeff = K;
    return exp;
}

ConnectionExpansion electric_continue(const ConnectionExpansion& exp, const GridField& E, int max_order, double tol) {
    const int d = exp.d();
    const CollarBackground& bg = *exp.background;
    if (!bg.exactly_flat) throw DomainError("electric_continue: only exactly flat collars are supported");
    if (d < 4) throw DomainError("electric_continue: needs d >= 4");
    check_one_form(E, exp.grid(), "electric_continue");
    if (E.N != exp.N()) throw ShapeError("electric_continue: matrix size mismatch");
    if (E.meta.weight && *E.meta.weight != 3 - d)
        throw ShapeError("electric_continue: electric data must carry weight " + std::to_string(3 - d));
    if (exp.max_order() < d - 4) throw DomainError("electric_continue: magnetic expansion must reach r^" + std::to_string(d - 4));
    if (max_order < d - 3) throw DomainError("electric_continue: max_order must be at least d - 3");

    const GridField& A0 = exp.coeffs[0];
    const double escale = std::max(1.0, max_abs(E));
    const double gl = max_abs(divergence(E, bg.geo, &A0)) / escale;
    if (gl > tol) throw PreconditionError("electric_continue: Gauss law violated, |div E| = " + std::to_string(gl), gl);
    ConnectionExpansion base = exp;
    base.coeffs.resize(d - 3);
    base.log_coeff.reset();
    base.radial.clear();
    const double ob = max_abs(obstruction_extract(base).kbar) / std::max(1.0, max_abs(A0));
    if (ob > tol) throw PreconditionError("electric_continue: obstruction does not vanish, |k| = " + std::to_string(ob), ob);

    ConnectionExpansion out = base;
    out.coeffs.push_back(scale(1.0 / (d - 3), E));
    out.coeffs.back().meta = lie_meta();
    out.l_choice = "L = E/(d-3)";
    for (int k = d - 3; k < max_order; ++k) {
        out.coeffs.push_back(GridField(out.grid(), lower_slots(1), out.N(), lie_meta()));
        const Residual r = residual(out, k);
        out.coeffs[k + 1] = scale(-1.0 / ((k + 1.0) * (k - d + 4.0)), r.ampere);
        out.coeffs[k + 1].meta = lie_meta();
    }
    return out;
}

MField pointwise_inverse(const MField& U) {
    if (U.is_zero()) throw DomainError("pointwise_inverse: zero field");
    const int N = U.n();
    MField r(U.grid(), N);
    using Mat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (std::size_t p = 0; p < U.points(); ++p) {
        Eigen::Map<const Mat> m(U.point(p), N, N);
        Eigen::FullPivLU<Mat> lu(m);
        if (!lu.isInvertible()) throw DomainError("pointwise_inverse: singular matrix at point " + std::to_string(p));
        Eigen::Map<Mat>(r.point(p), N, N) = lu.inverse();
    }
    return r;
}

ConnectionExpansion gauge_transform(const ConnectionExpansion& exp, const std::vector<MField>& U) {
    if (U.empty()) throw DomainError("gauge_transform: empty jet");
    const int m = exp.max_order();
    const int N = exp.N();
    std::vector<MField> Uc = U;
    for (auto& u : Uc) {
        if (u.is_zero()) continue;
        if (!same_grid(u.grid(), exp.grid())) throw ShapeError("gauge_transform: jet lives on another grid");
        if (u.n() == 1 && N > 1) u = u * MField::identity(exp.grid(), N);
        if (u.n() != N) throw ShapeError("gauge_transform: jet matrix size mismatch");
    }
    std::vector<MField> Ui(m + 1);
    Ui[0] = pointwise_inverse(Uc[0]);
    for (int j = 1; j <= m; ++j) {
        MField s;
        for (int i = 1; i <= j && i < static_cast<int>(Uc.size()); ++i)
            if (!Uc[i].is_zero() && !Ui[j - i].is_zero()) s += Uc[i] * Ui[j - i];
        Ui[j] = s.is_zero() ? MField() : -(Ui[0] * s);
    }
    const RSeries Us = RSeries::polynomial(Uc);
    const RSeries Uis = RSeries::truncated(Ui, m);
    const Tensor<RSeries> A = exp.series(m);
    const auto Ar = exp.radial_series(m);
    const int n = A.n;

    ConnectionExpansion out = exp;
    for (int k = 0; k <= m; ++k) out.coeffs[k] = GridField(exp.grid(), lower_slots(1), N, lie_meta());
    std::optional<GridField> logc;
    for (int i = 0; i < n; ++i) {
        const RSeries v = Uis * A(i) * Us + Uis * partial(Us, i);
        for (int k = 0; k <= m; ++k) out.coeffs[k](i) = coeff_or_zero(v, k, exp.grid(), N);
        if (exp.log_coeff && exp.d() - 3 <= m) {
            if (!logc) logc = GridField(exp.grid(), lower_slots(1), N, lie_meta());
            (*logc)(i) = log_coeff_or_zero(v, exp.d() - 3, exp.grid(), N);
        }
    }
    out.log_coeff = logc;
    RSeries r = Uis * Us.dr();
    if (Ar) r = r + Uis * (*Ar) * Us;
    out.radial.assign(m + 1, MField());
    for (int k = 0; k <= m; ++k) out.radial[k] = coeff_or_zero(r, k, exp.grid(), N);
    out.coeffs[0].meta = FieldMeta{true, 0};
    return out;
}

}  // namespace ccym
