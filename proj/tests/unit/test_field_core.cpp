#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"

#include "ccym/errors.hpp"
#include "ccym/field.hpp"
#include "ccym/io.hpp"
#include "ccym/series.hpp"

using namespace ccym;
namespace {
constexpr double pi = std::numbers::pi;

GridField scalar_field(const GridPtr& g, const std::function<double(double, double)>& f) {
    MField m = MField::from_function(g, [&](std::size_t p) { return cplx(f(g->coord(p, 0), g->coord(p, 1)), 0.0); });
    return GridField::scalar(m);
}

MField constant_su2(const GridPtr& g, int generator) {
    const auto gens = LieAlgebraSpec::su(2).generators();
    return MField::constant(g, 2, gens[generator]);
}
}  // namespace

TEST_SUITE("field_core") {
    TEST_CASE("spectral derivative of a single mode is exact") {
        const double L = 3.0;
        auto g = Grid::make({16, 8}, {L, L});
        auto f = scalar_field(g, [&](double x, double) { return std::sin(2 * pi * x / L); });
        auto df = spectral_partial(f, 0);
        double err = 0.0;
        for (std::size_t p = 0; p < g->size(); ++p)
            err = std::max(err, std::abs(df.c[0].at(p) - (2 * pi / L) * std::cos(2 * pi * g->coord(p, 0) / L)));
        CHECK(err < 1e-12);
    }

    TEST_CASE("spectral derivative of a product mode on the second axis") {
        const double L = 2.0;
        auto g = Grid::make({12, 12}, {L, L});
        auto f = scalar_field(g, [&](double x, double y) { return std::sin(2 * pi * x / L) * std::sin(4 * pi * y / L); });
        auto df = spectral_partial(f, 1);
        double err = 0.0;
        for (std::size_t p = 0; p < g->size(); ++p) {
            const double x = g->coord(p, 0), y = g->coord(p, 1);
            err = std::max(err, std::abs(df.c[0].at(p) - (4 * pi / L) * std::sin(2 * pi * x / L) * std::cos(4 * pi * y / L)));
        }
        CHECK(err < 1e-12);
    }

    TEST_CASE("constant has zero derivative and mixed partials commute") {
        auto g = Grid::make({10, 10});
        auto c = scalar_field(g, [](double, double) { return 2.5; });
        CHECK(max_abs(spectral_partial(c, 0)) < 1e-13);
        auto f = scalar_field(g, [](double x, double y) { return std::cos(x + 2 * y) + std::sin(3 * x) * std::cos(y); });
        auto dxy = spectral_partial(spectral_partial(f, 0), 1);
        auto dyx = spectral_partial(spectral_partial(f, 1), 0);
        CHECK(max_abs(sub(dxy, dyx)) < 1e-11);
    }

    TEST_CASE("spectral derivative rejects a bad axis") {
        auto g = Grid::make({4, 4});
        auto f = scalar_field(g, [](double x, double) { return std::sin(x); });
        CHECK_THROWS(spectral_partial(f, 2));
    }

    TEST_CASE("Pauli bracket") {
        auto g = Grid::make({2, 2});
        auto X = GridField::scalar(constant_su2(g, 0), {true, {}});
        auto Y = GridField::scalar(constant_su2(g, 1), {true, {}});
        auto XY = lie_bracket(X, Y);
        // [i s1, i s2] = -2 i s3, s3 = diag(1, -1)
        for (std::size_t p = 0; p < g->size(); ++p) {
            CHECK(std::abs(XY.c[0].at(p, 0, 0) - cplx(0, -2)) < 1e-15);
            CHECK(std::abs(XY.c[0].at(p, 1, 1) - cplx(0, 2)) < 1e-15);
            CHECK(std::abs(XY.c[0].at(p, 0, 1)) < 1e-15);
        }
        CHECK(max_abs(lie_bracket(X, X)) == 0.0);
        CHECK(max_abs(add(lie_bracket(X, Y), lie_bracket(Y, X))) == 0.0);
    }

    TEST_CASE("abelian bracket vanishes and Jacobi holds") {
        auto g = Grid::make({6, 6});
        auto a = scalar_field(g, [](double x, double) { return std::sin(x); });
        auto b = scalar_field(g, [](double, double y) { return std::cos(y); });
        CHECK(max_abs(lie_bracket(a, b)) == 0.0);

        auto A = random_connection(g, LieAlgebraSpec::su(2), 3, 1, 1.0, {0, 1});
        GridField X = GridField::scalar(A.c[0], A.meta), Y = GridField::scalar(A.c[1], A.meta);
        GridField Z = GridField::scalar(A.c[0] * A.c[1] - A.c[1] * A.c[0], A.meta);
        auto jac = add(add(lie_bracket(X, lie_bracket(Y, Z)), lie_bracket(Y, lie_bracket(Z, X))),
                       lie_bracket(Z, lie_bracket(X, Y)));
        CHECK(max_abs(jac) < 1e-12);
    }

    TEST_CASE("periodic quadrature") {
        auto g = Grid::make({8, 8});
        auto one = MField::scalar(g, 1.0);
        CHECK(std::abs(integrate(one) - cplx(4 * pi * pi, 0)) < 1e-12);
        auto s = MField::from_function(g, [&](std::size_t p) { return cplx(std::sin(g->coord(p, 0)), 0); });
        CHECK(std::abs(integrate(s)) < 1e-14);
        auto s2 = MField::from_function(g, [&](std::size_t p) { return cplx(std::pow(std::sin(g->coord(p, 0)), 2), 0); });
        CHECK(std::abs(integrate(s2).real() - pi * 2 * pi) < 1e-12);
    }

    TEST_CASE("random fields are reproducible and anti-Hermitian") {
        auto g = Grid::make({8, 8});
        auto a = random_connection(g, LieAlgebraSpec::su(2), 42, 2, 0.5, {0, 1});
        auto b = random_connection(g, LieAlgebraSpec::su(2), 42, 2, 0.5, {0, 1});
        auto c = random_connection(g, LieAlgebraSpec::su(2), 43, 2, 0.5, {0, 1});
        CHECK(max_abs(sub(a, b)) == 0.0);
        CHECK(max_abs(sub(a, c)) > 1e-3);
        CHECK(antihermitian_defect(a) < 1e-15);
        Rng r(7);
        const double u = r.uniform();
        CHECK(u >= -1.0);
        CHECK(u < 1.0);
    }

    TEST_CASE("Lie algebra tags") {
        CHECK(LieAlgebraSpec::parse("u1").N == 1);
        CHECK(LieAlgebraSpec::parse("su2").N == 2);
        CHECK(LieAlgebraSpec::parse("su3").dimension() == 8);
        CHECK_THROWS(LieAlgebraSpec::parse("so3"));
        // Tr(T_a T_b) = -2 delta_ab
        const auto gens = LieAlgebraSpec::su(3).generators();
        for (std::size_t a = 0; a < gens.size(); ++a)
            for (std::size_t b = 0; b < gens.size(); ++b) {
                cplx tr = 0;
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 3; ++k) tr += gens[a][i * 3 + k] * gens[b][k * 3 + i];
                CHECK(std::abs(tr - cplx(a == b ? -2.0 : 0.0, 0)) < 1e-14);
            }
    }

    TEST_CASE("field blobs round trip in both encodings") {
        auto g = Grid::make({4, 6}, {1.0, 2.0});
        auto A = random_connection(g, LieAlgebraSpec::su(2), 9, 1, 0.3, {0, 1});
        A.meta.weight = 0;
        for (Encoding e : {Encoding::Text, Encoding::Binary}) {
            std::stringstream ss;
            write_field(ss, A, e);
            GridField B = read_field(ss);
            CHECK(B.grid->same_as(*A.grid));
            CHECK(B.slots == A.slots);
            CHECK(B.meta.weight == A.meta.weight);
            CHECK(max_abs(sub(A, B)) == 0.0);
        }
    }

    TEST_CASE("series arithmetic") {
        auto g = Grid::make({2, 2});
        auto one = MField::scalar(g, 1.0);
        auto two = MField::scalar(g, 2.0);
        RSeries a = RSeries::polynomial({one, two});       // 1 + 2r
        RSeries b = RSeries::polynomial({MField(), one});  // r
        RSeries p = a * b;                                  // r + 2r^2
        CHECK(max_abs(p.coeff(1) - one) == 0.0);
        CHECK(max_abs(p.coeff(2) - two) == 0.0);
        CHECK(max_abs(p.dr().coeff(1) - MField::scalar(g, 4.0)) == 0.0);
        RSeries t = RSeries::truncated({one, two, one}, 2);
        CHECK(t.order() == 2);
        CHECK_THROWS(t.coeff(3));
    }
}
