#pragma once

#include <functional>
#include <vector>

#include "ccym/grid.hpp"

namespace ccym {

// Matrix-valued scalar field: one N x N complex matrix per grid point.
// A default-constructed MField is an exact zero of unspecified shape; it is
// absorbed by every operation, which keeps sparse series and flat backgrounds cheap.
class MField {
public:
    MField() = default;
    MField(GridPtr grid, int n);

    static MField scalar(GridPtr grid, double v);
    static MField identity(GridPtr grid, int n);
    // Same matrix m (row-major, n*n entries) at every point.
    static MField constant(GridPtr grid, int n, const std::vector<cplx>& m);
    // N = 1 field with value f(point index).
    static MField from_function(GridPtr grid, const std::function<cplx(std::size_t)>& f);

    bool is_zero() const { return v_.empty(); }
    const GridPtr& grid() const { return grid_; }
    int n() const { return n_; }
    std::size_t points() const { return grid_ ? grid_->size() : 0; }

    cplx& at(std::size_t p, int a = 0, int b = 0) { return v_[(p * n_ + a) * n_ + b]; }
    const cplx& at(std::size_t p, int a = 0, int b = 0) const { return v_[(p * n_ + a) * n_ + b]; }
    cplx* point(std::size_t p) { return v_.data() + p * n_ * n_; }
    const cplx* point(std::size_t p) const { return v_.data() + p * n_ * n_; }
    std::vector<cplx>& data() { return v_; }
    const std::vector<cplx>& data() const { return v_; }

    MField& operator+=(const MField& o);
    MField& operator-=(const MField& o);
    MField& operator*=(cplx s);
    MField& operator*=(double s);
    MField operator-() const;

    // Materialize an exact zero with the given shape.
    static MField zeros_like(const MField& shape_of) { return MField(shape_of.grid_, shape_of.n_); }

private:
    GridPtr grid_;
    int n_ = 0;
    std::vector<cplx> v_;
};

MField operator+(MField a, const MField& b);
MField operator-(MField a, const MField& b);
// Pointwise matrix product; an N = 1 operand broadcasts as a scalar.
MField operator*(const MField& a, const MField& b);
MField operator*(cplx s, MField a);
MField operator*(double s, MField a);
inline MField operator*(MField a, double s) { return s * std::move(a); }

MField comm(const MField& a, const MField& b);
MField trace(const MField& a);
MField adjoint(const MField& a);
MField partial(const MField& a, int axis);
// Flat scalar Laplacian sum_i d_i d_i.
MField flat_laplacian(const MField& a);
// Pointwise reciprocal of an N = 1 field.
MField reciprocal(const MField& a);
// Pointwise map of an N = 1 field.
MField map_scalar(const MField& a, const std::function<cplx(cplx)>& f);

double max_abs(const MField& a);
double rms(const MField& a);
// max over points of ||X^dagger + X|| (entrywise max).
double antihermitian_defect(const MField& a);
double max_imag(const MField& a);

}  // namespace ccym
