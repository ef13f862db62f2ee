#include "ccym/mfield.hpp"

#include <algorithm>
#include <cmath>

#include "ccym/errors.hpp"

namespace ccym {

namespace {

void check_same(const MField& a, const MField& b, const char* op) {
    if (!same_grid(a.grid(), b.grid())) throw ShapeError(std::string(op) + ": mismatched grid");
}

}  // namespace

MField::MField(GridPtr grid, int n) : grid_(std::move(grid)), n_(n) {
    if (!grid_) throw ShapeError("MField: null grid");
    if (n_ < 1) throw ShapeError("MField: matrix_dim must be >= 1");
    v_.assign(grid_->size() * n_ * n_, cplx(0.0));
}

MField MField::scalar(GridPtr grid, double v) {
    MField f(std::move(grid), 1);
    std::fill(f.v_.begin(), f.v_.end(), cplx(v));
    return f;
}

MField MField::identity(GridPtr grid, int n) {
    MField f(std::move(grid), n);
    for (std::size_t p = 0; p < f.points(); ++p)
        for (int a = 0; a < n; ++a) f.at(p, a, a) = 1.0;
    return f;
}

MField MField::constant(GridPtr grid, int n, const std::vector<cplx>& m) {
    if (m.size() != static_cast<std::size_t>(n) * n) throw ShapeError("MField::constant: wrong entry count");
    MField f(std::move(grid), n);
    for (std::size_t p = 0; p < f.points(); ++p) std::copy(m.begin(), m.end(), f.point(p));
    return f;
}

MField MField::from_function(GridPtr grid, const std::function<cplx(std::size_t)>& fn) {
    MField f(std::move(grid), 1);
    for (std::size_t p = 0; p < f.points(); ++p) f.v_[p] = fn(p);
    return f;
}

MField& MField::operator+=(const MField& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    check_same(*this, o, "add");
    if (n_ != o.n_) throw ShapeError("add: matrix_dim mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
}

MField& MField::operator-=(const MField& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = -o;
    check_same(*this, o, "sub");
    if (n_ != o.n_) throw ShapeError("sub: matrix_dim mismatch");
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] -= o.v_[i];
    return *this;
}

MField& MField::operator*=(cplx s) {
    for (auto& x : v_) x *= s;
    return *this;
}

MField& MField::operator*=(double s) {
    for (auto& x : v_) x *= s;
    return *this;
}

MField MField::operator-() const {
    MField r = *this;
    for (auto& x : r.v_) x = -x;
    return r;
}

MField operator+(MField a, const MField& b) { return a += b; }
MField operator-(MField a, const MField& b) { return a -= b; }

MField operator*(const MField& a, const MField& b) {
    if (a.is_zero() || b.is_zero()) return {};
    check_same(a, b, "mul");
    const std::size_t np = a.points();
    if (a.n() == 1 || b.n() == 1) {
        const MField& s = (a.n() == 1) ? a : b;
        const MField& m = (a.n() == 1) ? b : a;
        MField r(m.grid(), m.n());
        const int nn = m.n() * m.n();
        for (std::size_t p = 0; p < np; ++p) {
            const cplx sv = s.data()[p];
            const cplx* src = m.point(p);
            cplx* dst = r.point(p);
            for (int i = 0; i < nn; ++i) dst[i] = sv * src[i];
        }
        return r;
    }
    if (a.n() != b.n()) throw ShapeError("mul: matrix_dim mismatch");
    const int n = a.n();
    MField r(a.grid(), n);
    for (std::size_t p = 0; p < np; ++p) {
        const cplx* x = a.point(p);
        const cplx* y = b.point(p);
        cplx* z = r.point(p);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const cplx xik = x[i * n + k];
                for (int j = 0; j < n; ++j) z[i * n + j] += xik * y[k * n + j];
            }
    }
    return r;
}

MField operator*(cplx s, MField a) { return a *= s; }
MField operator*(double s, MField a) { return a *= s; }

MField comm(const MField& a, const MField& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.n() == 1 || b.n() == 1) return {};
    return a * b - b * a;
}

MField trace(const MField& a) {
    if (a.is_zero()) return {};
    MField r(a.grid(), 1);
    const int n = a.n();
    for (std::size_t p = 0; p < a.points(); ++p) {
        cplx s = 0.0;
        for (int i = 0; i < n; ++i) s += a.at(p, i, i);
        r.at(p) = s;
    }
    return r;
}

MField adjoint(const MField& a) {
    if (a.is_zero()) return {};
    MField r(a.grid(), a.n());
    const int n = a.n();
    for (std::size_t p = 0; p < a.points(); ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) r.at(p, i, j) = std::conj(a.at(p, j, i));
    return r;
}

MField partial(const MField& a, int axis) {
    if (a.is_zero()) return {};
    const Grid& g = *a.grid();
    if (axis < 0 || axis >= g.dim()) throw DomainError("spectral_partial: axis out of range");
    const int m = g.points(axis);
    if (m == 2) return {};
    const std::size_t stride = g.stride(axis);
    const std::size_t block = stride * m;
    const std::vector<double>& dm = g.diff_matrix(axis);
    const int nn = a.n() * a.n();
    MField r(a.grid(), a.n());
    std::vector<cplx> line(static_cast<std::size_t>(m) * nn);
    for (std::size_t outer = 0; outer < g.size(); outer += block) {
        for (std::size_t inner = 0; inner < stride; ++inner) {
            const std::size_t base = outer + inner;
            for (int j = 0; j < m; ++j) {
                const cplx* src = a.point(base + j * stride);
                std::copy(src, src + nn, line.begin() + static_cast<std::ptrdiff_t>(j) * nn);
            }
            for (int i = 0; i < m; ++i) {
                cplx* dst = r.point(base + i * stride);
                const double* row = dm.data() + static_cast<std::size_t>(i) * m;
                for (int j = 0; j < m; ++j) {
                    const double w = row[j];
                    if (w == 0.0) continue;
                    const cplx* src = line.data() + static_cast<std::size_t>(j) * nn;
                    for (int e = 0; e < nn; ++e) dst[e] += w * src[e];
                }
            }
        }
    }
    return r;
}

MField flat_laplacian(const MField& a) {
    if (a.is_zero()) return {};
    MField r;
    for (int ax = 0; ax < a.grid()->dim(); ++ax) r += partial(partial(a, ax), ax);
    if (r.is_zero()) r = MField::zeros_like(a);
    return r;
}

MField reciprocal(const MField& a) {
    if (a.is_zero() || a.n() != 1) throw ShapeError("reciprocal: needs an allocated N = 1 field");
    MField r(a.grid(), 1);
    for (std::size_t p = 0; p < a.points(); ++p) r.at(p) = 1.0 / a.at(p);
    return r;
}

MField map_scalar(const MField& a, const std::function<cplx(cplx)>& f) {
    if (a.is_zero() || a.n() != 1) throw ShapeError("map_scalar: needs an allocated N = 1 field");
    MField r(a.grid(), 1);
    for (std::size_t p = 0; p < a.points(); ++p) r.at(p) = f(a.at(p));
    return r;
}

double max_abs(const MField& a) {
    double m = 0.0;
    for (const auto& x : a.data()) m = std::max(m, std::abs(x));
    return m;
}

double rms(const MField& a) {
    if (a.is_zero()) return 0.0;
    double s = 0.0;
    for (const auto& x : a.data()) s += std::norm(x);
    return std::sqrt(s / static_cast<double>(a.points()));
}

double antihermitian_defect(const MField& a) {
    if (a.is_zero()) return 0.0;
    const int n = a.n();
    double m = 0.0;
    for (std::size_t p = 0; p < a.points(); ++p)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m = std::max(m, std::abs(a.at(p, i, j) + std::conj(a.at(p, j, i))));
    return m;
}

double max_imag(const MField& a) {
    double m = 0.0;
    for (const auto& x : a.data()) m = std::max(m, std::abs(x.imag()));
    return m;
}

}  // namespace ccym
