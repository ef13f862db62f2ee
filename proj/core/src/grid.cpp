#include "ccym/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ccym/errors.hpp"

namespace ccym {

namespace {

// Fourier differentiation matrix on n equispaced points of [0, 2*pi).
std::vector<double> fourier_diff(int n, double scale) {
    std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
    const double h = 2.0 * std::numbers::pi / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const int k = i - j;
            const double sgn = (k % 2 == 0) ? 1.0 : -1.0;
            const double arg = 0.5 * k * h;
            const double v = (n % 2 == 0) ? 0.5 * sgn / std::tan(arg) : 0.5 * sgn / std::sin(arg);
            d[static_cast<std::size_t>(i) * n + j] = v * scale;
        }
    }
    // n == 2: cot(pi/2) is ~6e-17, not 0.
    if (n == 2) std::fill(d.begin(), d.end(), 0.0);
    return d;
}

}  // namespace

Grid::Grid(std::vector<int> points, std::vector<double> lengths)
    : points_(std::move(points)), lengths_(std::move(lengths)) {
    if (points_.empty()) throw DomainError("grid: boundary_dim must be >= 1");
    if (points_.size() != lengths_.size())
        throw ShapeError("grid: points_per_axis and lengths differ in size");
    for (std::size_t a = 0; a < points_.size(); ++a) {
        if (points_[a] < 2) throw DomainError("grid: axis " + std::to_string(a) + " needs >= 2 points");
        if (!(lengths_[a] > 0.0)) throw DomainError("grid: axis " + std::to_string(a) + " period must be > 0");
    }
    strides_.assign(points_.size(), 1);
    for (int a = dim() - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * points_[a + 1];
    size_ = strides_[0] * points_[0];
    for (int a = 0; a < dim(); ++a)
        dmat_.push_back(fourier_diff(points_[a], 2.0 * std::numbers::pi / lengths_[a]));
}

std::shared_ptr<const Grid> Grid::make(std::vector<int> points, std::vector<double> lengths) {
    return std::make_shared<const Grid>(std::move(points), std::move(lengths));
}

std::shared_ptr<const Grid> Grid::make(std::vector<int> points) {
    std::vector<double> l(points.size(), 2.0 * std::numbers::pi);
    return make(std::move(points), std::move(l));
}

double Grid::coord(std::size_t p, int axis) const {
    return lengths_[axis] * index_along(p, axis) / points_[axis];
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim(); ++a) v *= lengths_[a] / points_[a];
    return v;
}

double Grid::total_volume() const {
    double v = 1.0;
    for (double l : lengths_) v *= l;
    return v;
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same_as(*b);
}

}  // namespace ccym
