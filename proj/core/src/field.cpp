#include "ccym/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccym/errors.hpp"

namespace ccym {

GridField::GridField(GridPtr g, std::vector<Slot> s, int matrix_dim, FieldMeta m)
    : Tensor<MField>(g ? g->dim() : 0, std::move(s)), grid(std::move(g)), N(matrix_dim), meta(m) {
    if (!grid) throw ShapeError("GridField: null grid");
    if (rank() == 0) c.resize(1);
    for (auto& x : c) x = MField(grid, N);
}

GridField::GridField(const Tensor<MField>& t, GridPtr g, int matrix_dim, FieldMeta m)
    : Tensor<MField>(t), grid(std::move(g)), N(matrix_dim), meta(m) {
    if (!grid) throw ShapeError("GridField: null grid");
    if (n != grid->dim()) throw ShapeError("GridField: tensor index range differs from boundary_dim");
    if (rank() == 0 && c.empty()) c.resize(1);
    for (auto& x : c) {
        if (x.is_zero()) {
            x = MField(grid, N);
        } else if (x.n() != N) {
            if (x.n() == 1 && N > 1) x = x * MField::identity(grid, N);
            else throw ShapeError("GridField: component matrix_dim mismatch");
        }
    }
}

GridField GridField::scalar(const MField& f, FieldMeta m) {
    if (f.is_zero()) throw ShapeError("GridField::scalar: needs an allocated field");
    GridField r(f.grid(), {}, f.n(), m);
    r.c[0] = f;
    return r;
}

namespace {

void check_compatible(const GridField& a, const GridField& b, const char* op) {
    if (!same_grid(a.grid, b.grid)) throw ShapeError(std::string(op) + ": mismatched grid");
    if (a.slots != b.slots) throw ShapeError(std::string(op) + ": rank or index placement mismatch");
    if (a.N != b.N) throw ShapeError(std::string(op) + ": matrix_dim mismatch");
    if (a.meta.weight && b.meta.weight && *a.meta.weight != *b.meta.weight)
        throw ShapeError(std::string(op) + ": conformal weight mismatch");
}

FieldMeta merged(const GridField& a, const GridField& b) {
    FieldMeta m;
    m.lie = a.meta.lie && b.meta.lie;
    m.weight = a.meta.weight ? a.meta.weight : b.meta.weight;
    return m;
}

}  // namespace

GridField add(const GridField& a, const GridField& b) {
    check_compatible(a, b, "add");
    GridField r = a;
    r.meta = merged(a, b);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

GridField sub(const GridField& a, const GridField& b) {
    check_compatible(a, b, "sub");
    GridField r = a;
    r.meta = merged(a, b);
    for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

GridField scale(double s, const GridField& a) {
    GridField r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

LieAlgebraSpec LieAlgebraSpec::parse(const std::string& tag) {
    if (tag == "u1") return u1();
    if (tag.size() > 2 && tag.rfind("su", 0) == 0) {
        const int n = std::stoi(tag.substr(2));
        if (n < 2) throw DomainError("lie algebra: suN needs N >= 2");
        return su(n);
    }
    throw DomainError("lie algebra: unknown group tag '" + tag + "' (use u1 or suN)");
}

std::string LieAlgebraSpec::tag() const { return group == Group::U1 ? "u1" : "su" + std::to_string(N); }

int LieAlgebraSpec::dimension() const { return group == Group::U1 ? 1 : N * N - 1; }

std::vector<std::vector<cplx>> LieAlgebraSpec::generators() const {
    const cplx I(0.0, 1.0);
    std::vector<std::vector<cplx>> out;
    if (group == Group::U1) {
        out.push_back({I});
        return out;
    }
    const int n = N;
    auto blank = [n] { return std::vector<cplx>(static_cast<std::size_t>(n) * n, 0.0); };
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            auto s = blank();
            s[j * n + k] = I;
            s[k * n + j] = I;
            out.push_back(s);
            auto a = blank();  // i * (-i(E_jk - E_kj)) = E_jk - E_kj
            a[j * n + k] = 1.0;
            a[k * n + j] = -1.0;
            out.push_back(a);
        }
    for (int l = 1; l < n; ++l) {
        auto d = blank();
        const double f = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int m = 0; m < l; ++m) d[m * n + m] = I * f;
        d[l * n + l] = -I * (f * l);
        out.push_back(d);
    }
    return out;
}

GridField spectral_partial(const GridField& f, int axis) {
    if (axis < 0 || axis >= f.grid->dim()) throw DomainError("spectral_partial: axis out of range");
    GridField r = f;
    for (auto& x : r.c) x = partial(x, axis);
    for (auto& x : r.c)
        if (x.is_zero()) x = MField(f.grid, f.N);
    return r;
}

GridField lie_bracket(const GridField& x, const GridField& y) {
    if (!same_grid(x.grid, y.grid)) throw ShapeError("lie_bracket: mismatched grid");
    if (x.N != y.N) throw ShapeError("lie_bracket: matrix_dim mismatch");
    if (x.rank() == 0 || y.rank() == 0 || x.slots == y.slots) {
        const GridField& shape = (x.rank() >= y.rank()) ? x : y;
        GridField r(shape.grid, shape.slots, shape.N, merged(x, y));
        for (std::size_t i = 0; i < r.c.size(); ++i) {
            const MField& a = x.rank() == 0 ? x.c[0] : x.c[i];
            const MField& b = y.rank() == 0 ? y.c[0] : y.c[i];
            MField v = comm(a, b);
            if (!v.is_zero()) r.c[i] = std::move(v);
        }
        return r;
    }
    throw ShapeError("lie_bracket: operands must share index structure or one must be rank 0");
}

cplx pairwise_sum(const cplx* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        cplx s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

double pairwise_sum(const double* v, std::size_t n) {
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

cplx integrate(const MField& f, const MField& density) {
    if (f.is_zero()) return 0.0;
    if (f.n() != 1) throw ShapeError("integrate: integrand must be a scalar (N = 1) field");
    if (density.is_zero() || density.n() != 1) throw ShapeError("integrate: density must be an allocated scalar");
    if (!same_grid(f.grid(), density.grid())) throw ShapeError("integrate: mismatched grid");
    std::vector<cplx> w(f.points());
    for (std::size_t p = 0; p < w.size(); ++p) {
        const cplx rho = density.at(p);
        if (!(rho.real() > 0.0) || std::abs(rho.imag()) > 1e-12 * std::abs(rho.real()))
            throw DomainError("integrate: density must be positive real");
        w[p] = f.at(p) * rho;
    }
    return pairwise_sum(w.data(), w.size()) * f.grid()->cell_volume();
}

cplx integrate(const MField& f) {
    if (f.is_zero()) return 0.0;
    if (f.n() != 1) throw ShapeError("integrate: integrand must be a scalar (N = 1) field");
    return pairwise_sum(f.data().data(), f.points()) * f.grid()->cell_volume();
}

double max_abs(const GridField& f) {
    double m = 0.0;
    for (const auto& x : f.c) m = std::max(m, max_abs(x));
    return m;
}

double rms(const GridField& f) {
    double s = 0.0;
    for (const auto& x : f.c) {
        const double r = rms(x);
        s += r * r;
    }
    return std::sqrt(s);
}

double antihermitian_defect(const GridField& f) {
    double m = 0.0;
    for (const auto& x : f.c) m = std::max(m, antihermitian_defect(x));
    return m;
}

MField random_band_limited(const GridPtr& g, Rng& rng, int cutoff, double amplitude, const std::vector<int>& axes) {
    if (cutoff < 0) throw DomainError("random field: cutoff must be >= 0");
    for (int a : axes)
        if (a < 0 || a >= g->dim()) throw DomainError("random field: axis out of range");
    const int na = static_cast<int>(axes.size());
    const int side = 2 * cutoff + 1;
    std::size_t count = 1;
    for (int i = 0; i < na; ++i) count *= side;
    const double norm = amplitude / std::sqrt(static_cast<double>(count));
    MField f(g, 1);
    std::vector<int> m(na, -cutoff);
    for (std::size_t t = 0; t < count; ++t) {
        std::size_t rem = t;
        for (int i = na - 1; i >= 0; --i) {
            m[i] = static_cast<int>(rem % side) - cutoff;
            rem /= side;
        }
        const double alpha = rng.uniform() * norm;
        const double beta = rng.uniform() * norm;
        for (std::size_t p = 0; p < g->size(); ++p) {
            double th = 0.0;
            for (int i = 0; i < na; ++i) th += 2.0 * std::numbers::pi * m[i] * g->coord(p, axes[i]) / g->length(axes[i]);
            f.at(p) += alpha * std::cos(th) + beta * std::sin(th);
        }
    }
    return f;
}

GridField random_connection(const GridPtr& g, const LieAlgebraSpec& lie, std::uint64_t seed, int cutoff,
                            double amplitude, const std::vector<int>& axes) {
    Rng rng(seed);
    const auto gens = lie.generators();
    GridField a(g, {Slot::Lower}, lie.N, FieldMeta{true, 0});
    for (int i = 0; i < g->dim(); ++i) {
        MField comp(g, lie.N);
        for (const auto& t : gens) {
            MField coef = random_band_limited(g, rng, cutoff, amplitude, axes);
            comp += coef * MField::constant(g, lie.N, t);
        }
        a.c[i] = comp;
    }
    return a;
}

MField fourier_sum(const GridPtr& g, const std::vector<FourierTerm>& terms) {
    MField f(g, 1);
    for (const auto& t : terms) {
        if (static_cast<int>(t.mode.size()) != g->dim()) throw ShapeError("fourier term: mode needs boundary_dim entries");
        for (std::size_t p = 0; p < g->size(); ++p) {
            double th = 0.0;
            for (int a = 0; a < g->dim(); ++a) th += 2.0 * std::numbers::pi * t.mode[a] * g->coord(p, a) / g->length(a);
            f.at(p) += t.amp * (t.sine ? std::sin(th) : std::cos(th));
        }
    }
    return f;
}

}  // namespace ccym
