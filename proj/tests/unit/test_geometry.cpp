#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ccym/geometry.hpp"
#include "ccym/tensor_ops.hpp"
#include "oracles.hpp"

using namespace ccym;

namespace {
double max_component(const Tensor<MField>& t) {
    double m = 0.0;
    for (const auto& c : t.c) m = std::max(m, c.is_zero() ? 0.0 : max_abs(c));
    return m;
}

std::vector<double> coords(const Grid& g, std::size_t p) {
    std::vector<double> x(g.dim());
    for (int a = 0; a < g.dim(); ++a) x[a] = g.coord(p, a);
    return x;
}
}  // namespace

TEST_SUITE("boundary_geometry") {
    TEST_CASE("flat metric has no curvature") {
        auto g = Grid::make({4, 4, 4, 4});
        auto geo = curvature_package(conformally_flat_metric(MField::scalar(g, 0.0)));
        CHECK(max_component(geo.schouten) < 1e-14);
        CHECK(max_component(geo.cotton) < 1e-14);
        CHECK(max_component(*geo.weyl) < 1e-14);
        CHECK(max_abs(geo.J) < 1e-14);
        auto flat = flat_geometry(g);
        CHECK(flat.flat);
    }

    TEST_CASE("constant conformal factor has no curvature") {
        auto g = Grid::make({6, 6, 6});
        auto geo = curvature_package(conformally_flat_metric(MField::scalar(g, 0.4)));
        CHECK(max_component(*geo.riemann) < 1e-13);
        CHECK(max_component(geo.ricci) < 1e-13);
    }

    TEST_CASE("conformally flat Schouten tensor matches the analytic formula") {
        // phi = 0.1 sin(x_1) in four boundary dimensions
        auto g = Grid::make({32, 2, 2, 2});
        oracle::FourierPhi phi{{{0.1, {1, 0, 0, 0}, true}}, g->lengths()};
        MField ph = MField::from_function(g, [&](std::size_t p) { return cplx(phi.value(coords(*g, p)), 0); });
        auto geo = curvature_package(conformally_flat_metric(ph));
        double err = 0.0;
        for (std::size_t p = 0; p < g->size(); ++p)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    err = std::max(err, std::abs(geo.schouten(i, j).at(p).real() - oracle::conformal_schouten(phi, coords(*g, p), i, j)));
        CHECK(err < 1e-9);
    }

    TEST_CASE("metric compatibility on a two-axis conformal factor") {
        auto g = Grid::make({24, 24, 2, 2});
        oracle::FourierPhi phi{{{0.08, {1, 1, 0, 0}, false}, {0.05, {0, 2, 0, 0}, true}}, g->lengths()};
        MField ph = MField::from_function(g, [&](std::size_t p) { return cplx(phi.value(coords(*g, p)), 0); });
        auto metric = conformally_flat_metric(ph);
        auto geo = curvature_package(metric);
        auto dg = covariant_derivative(metric, geo, nullptr);
        CHECK(max_abs(dg) < 1e-10);
        // Schouten check against the analytic formula on a two-axis profile
        double err = 0.0;
        for (std::size_t p = 0; p < g->size(); ++p)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    err = std::max(err, std::abs(geo.schouten(i, j).at(p).real() - oracle::conformal_schouten(phi, coords(*g, p), i, j)));
        CHECK(err < 1e-9);
    }

    TEST_CASE("gauge curvature examples") {
        auto g = Grid::make({8, 8});
        auto geo = flat_geometry(g);
        // A_1 = sin(x_2): F_12 = -cos(x_2)
        GridField A(g, lower_slots(1), 1, {true, {}});
        A.c[0] = MField::from_function(g, [&](std::size_t p) { return cplx(std::sin(g->coord(p, 1)), 0); });
        A.c[1] = MField::zeros_like(A.c[0]);
        auto F = gauge_curvature(A);
        double err = 0.0;
        for (std::size_t p = 0; p < g->size(); ++p) err = std::max(err, std::abs(F(0, 1).at(p) + std::cos(g->coord(p, 1))));
        CHECK(err < 1e-13);

        // su(2) constants A_1 = i s1, A_2 = i s2: F_12 = -2 i s3
        const auto gens = LieAlgebraSpec::su(2).generators();
        GridField B(g, lower_slots(1), 2, {true, {}});
        B.c[0] = MField::constant(g, 2, gens[0]);
        B.c[1] = MField::constant(g, 2, gens[1]);
        auto FB = gauge_curvature(B);
        CHECK(std::abs(FB(0, 1).at(0, 0, 0) - cplx(0, -2)) < 1e-15);
        CHECK(std::abs(FB(0, 1).at(0, 1, 1) - cplx(0, 2)) < 1e-15);

        // pure abelian gauge d chi gives zero curvature
        GridField C(g, lower_slots(1), 1, {true, {}});
        MField chi = MField::from_function(g, [&](std::size_t p) { return cplx(0, std::sin(g->coord(p, 0) + g->coord(p, 1))); });
        C.c[0] = partial(chi, 0);
        C.c[1] = partial(chi, 1);
        CHECK(max_abs(gauge_curvature(C)) < 1e-13);
    }

    TEST_CASE("current of a single abelian mode") {
        auto g = Grid::make({8, 8});
        auto geo = flat_geometry(g);
        const int k = 2;
        GridField A(g, lower_slots(1), 1, {true, {}});
        A.c[0] = MField::from_function(g, [&](std::size_t p) { return cplx(0, std::sin(k * g->coord(p, 1))); });
        A.c[1] = MField::zeros_like(A.c[0]);
        auto data = gauge_data(A, geo);
        double err = 0.0;
        for (std::size_t p = 0; p < g->size(); ++p)
            err = std::max(err, std::abs(data.j(0).at(p) - cplx(0, -k * k * std::sin(k * g->coord(p, 1)))));
        CHECK(err < 1e-12);
        CHECK(max_abs(data.j(1)) < 1e-12);
    }

    TEST_CASE("curvature and current are gauge covariant") {
        auto g = Grid::make({12, 12});
        auto geo = flat_geometry(g);
        const auto lie = LieAlgebraSpec::su(2);
        auto A = random_connection(g, lie, 21, 1, 0.3, {0, 1});
        // constant unitary frame
        const auto gens = lie.generators();
        const double t = 0.7;
        std::vector<cplx> u(4), ui(4);
        for (int i = 0; i < 4; ++i) {
            const cplx id = (i == 0 || i == 3) ? 1.0 : 0.0;
            u[i] = std::cos(t) * id + std::sin(t) * gens[2][i];
            ui[i] = std::cos(t) * id - std::sin(t) * gens[2][i];
        }
        MField U = MField::constant(g, 2, u), Ui = MField::constant(g, 2, ui);
        auto dA = gauge_data(A, geo);
        auto dB = gauge_data(gauge_transform_connection(A, U, Ui), geo);
        CHECK(max_abs(sub(dB.F, conjugate(dA.F, U, Ui))) < 1e-12);
        CHECK(max_abs(sub(dB.j, conjugate(dA.j, U, Ui))) < 1e-10);
    }
}
