#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace ccym {

using cplx = std::complex<double>;

// Periodic tensor-product grid on the boundary torus. Axis 0 varies slowest.
class Grid {
public:
    Grid(std::vector<int> points, std::vector<double> lengths);

    static std::shared_ptr<const Grid> make(std::vector<int> points, std::vector<double> lengths);
    // All periods 2*pi.
    static std::shared_ptr<const Grid> make(std::vector<int> points);

    int dim() const { return static_cast<int>(points_.size()); }
    int points(int axis) const { return points_.at(axis); }
    double length(int axis) const { return lengths_.at(axis); }
    const std::vector<int>& points() const { return points_; }
    const std::vector<double>& lengths() const { return lengths_; }

    std::size_t size() const { return size_; }
    std::size_t stride(int axis) const { return strides_[axis]; }
    int index_along(std::size_t p, int axis) const {
        return static_cast<int>((p / strides_[axis]) % static_cast<std::size_t>(points_[axis]));
    }
    double coord(std::size_t p, int axis) const;

    double cell_volume() const;
    double total_volume() const;

    // Row-major n x n matrix mapping samples on one line to derivative samples,
    // already scaled by 2*pi/L. The Nyquist mode is dropped for even n.
    const std::vector<double>& diff_matrix(int axis) const { return dmat_[axis]; }

    bool same_as(const Grid& o) const { return points_ == o.points_ && lengths_ == o.lengths_; }

private:
    std::vector<int> points_;
    std::vector<double> lengths_;
    std::vector<std::size_t> strides_;
    std::size_t size_ = 0;
    std::vector<std::vector<double>> dmat_;
};

using GridPtr = std::shared_ptr<const Grid>;

bool same_grid(const GridPtr& a, const GridPtr& b);

}  // namespace ccym
