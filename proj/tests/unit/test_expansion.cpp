#include <cmath>

#include "doctest.h"

#include "ccym/errors.hpp"
#include "ccym/expansion.hpp"
#include "ccym/mode_ode.hpp"
#include "oracles.hpp"

using namespace ccym;

namespace {
// Boundary torus of dimension d - 1 with 8 points along axis 1 and 2 elsewhere.
GridPtr mode_grid(int d, int active = 8) {
    std::vector<int> pts(d - 1, 2);
    pts[1] = active;
    return Grid::make(pts);
}

// A_0 = i amp sin(k x_1), other components zero.
GridField mode_connection(const GridPtr& g, double amp, int k) {
    GridField A(g, lower_slots(1), 1, {true, 0});
    for (auto& c : A.c) c = MField(g, 1);
    A.c[0] = MField::from_function(g, [&](std::size_t p) { return cplx(0, amp * std::sin(k * g->coord(p, 1))); });
    return A;
}

double max_residual(const ConnectionExpansion& e, int order) {
    const auto r = residual(e, order);
    return std::max(max_abs(r.ampere), max_abs(r.gauss));
}
}  // namespace

TEST_SUITE("fg_expansion") {
    TEST_CASE("flat mode coefficients follow the Dirichlet branch") {
        for (int d = 5; d <= 10; ++d) {
            const int k = 1;
            auto g = mode_grid(d);
            auto A0 = mode_connection(g, 0.3, k);
            auto e = magnetic_expand(CollarBackground::flat(d, g), A0, d - 5);
            // the resonant order d - 3 lies past d - 5, so the plain recursion applies for every d
            const auto ref = oracle::series_dirichlet(d - 4, k, d - 5);
            for (int m = 1; m <= d - 5; ++m) {
                const GridField expect = scale(ref[m], A0);
                CHECK(max_abs(sub(e.coeff(m), expect)) <= 1e-10 * max_abs(A0));
            }
        }
    }

    TEST_CASE("flat boundary connection has a trivial expansion") {
        auto g = mode_grid(8);
        GridField A(g, lower_slots(1), 1, {true, 0});
        for (auto& c : A.c) c = MField(g, 1);
        A.c[0] = MField::from_function(g, [](std::size_t) { return cplx(0, 0.7); });
        auto e = magnetic_expand(CollarBackground::flat(8, g), A, 3);
        for (int m = 1; m <= 3; ++m) CHECK(max_abs(e.coeff(m)) < 1e-14);
    }

    TEST_CASE("resonant order is refused") {
        auto g = mode_grid(6);
        auto A0 = mode_connection(g, 0.3, 1);
        CHECK_THROWS_AS(magnetic_expand(CollarBackground::flat(6, g), A0, 3), ResonanceError);
    }

    TEST_CASE("curved abelian second coefficient is a quarter of the divergence of F") {
        const int d = 7;
        auto g = Grid::make({16, 16, 2, 2, 2, 2});
        MField phi = fourier_sum(g, {{0.05, {1, 0, 0, 0, 0, 0}, true}, {0.04, {0, 1, 0, 0, 0, 0}, false}});
        auto geo = curvature_package(conformally_flat_metric(phi), {false});
        auto A0 = random_connection(g, LieAlgebraSpec::u1(), 8, 1, 0.3, {0, 1});
        auto e = magnetic_expand(CollarBackground::curved(d, geo), A0, d - 5, LieAlgebraSpec::u1());
        auto data = gauge_data(A0, geo);
        auto expect = scale(0.25, divergence(data.F, geo, nullptr));
        CHECK(max_abs(sub(e.coeff(2), expect)) < 1e-10 * max_abs(expect));
        CHECK(max_abs(e.coeff(1)) == 0.0);
    }

    TEST_CASE("residuals vanish below the obstruction order") {
        const int d = 7;
        auto g = Grid::make({16, 16, 2, 2, 2, 2});
        auto A0 = random_connection(g, LieAlgebraSpec::su(2), 4, 1, 0.3, {0, 1});
        auto e = magnetic_expand(CollarBackground::flat(d, g), A0, d - 5, LieAlgebraSpec::su(2));
        for (int m = 0; m < d - 4; ++m) CHECK(max_abs(residual(e, m).ampere) < 1e-9);
        for (int m = 0; m < d - 3; ++m) CHECK(max_abs(residual(e, m).gauss) < 1e-9);

        GridField Z(g, lower_slots(1), 2, {true, 0});
        auto z = magnetic_expand(CollarBackground::flat(d, g), Z, d - 5, LieAlgebraSpec::su(2));
        for (int m = 0; m <= d - 3; ++m) CHECK(max_residual(z, m) == 0.0);
    }

    TEST_CASE("d = 5 obstruction is the boundary current and the log term removes it") {
        const int d = 5;
        auto g = Grid::make({12, 12, 2, 2});
        auto A0 = random_connection(g, LieAlgebraSpec::su(2), 6, 1, 0.4, {0, 1});
        auto bg = CollarBackground::flat(d, g);
        auto e = magnetic_expand(bg, A0, d - 4, LieAlgebraSpec::su(2));
        auto k = obstruction_extract(e);
        auto j = gauge_data(A0, bg->geo).j;
        CHECK(max_abs(sub(k.kbar, j)) < 1e-9 * max_abs(j));

        auto K = log_coefficient(k);
        CHECK(max_abs(add(K, scale(1.0 / (d - 3), k.kbar))) < 1e-15);
        auto el = with_log_term(e, K);
        auto r = residual(el, d - 4);
        CHECK(max_abs(r.ampere) < 1e-8 * max_abs(j));
        CHECK(max_abs(r.ampere_log) < 1e-8 * max_abs(j));

        ObstructionCurrent zero{d, scale(0.0, k.kbar)};
        CHECK(max_abs(log_coefficient(zero)) == 0.0);
    }

    TEST_CASE("electric continuation") {
        const int d = 6;
        auto g = mode_grid(d);
        auto bg = CollarBackground::flat(d, g);
        GridField A0(g, lower_slots(1), 1, {true, 0});
        for (auto& c : A0.c) c = MField(g, 1);
        auto e = magnetic_expand(bg, A0, d - 4);

        SUBCASE("zero data pads with zeros") {
            GridField E(g, lower_slots(1), 1, {true, 3 - d});
            for (auto& c : E.c) c = MField(g, 1);
            auto c = electric_continue(e, E, 8);
            CHECK(c.max_order() == 8);
            for (int m = 0; m <= 8; ++m) CHECK(max_abs(c.coeff(m)) == 0.0);
        }
        SUBCASE("transverse mode follows the Neumann branch") {
            const int k = 2;
            GridField E = mode_connection(g, 0.5, k);
            E.meta.weight = 3 - d;
            auto c = electric_continue(e, E, d + 1);
            const auto N = oracle::series_neumann(d - 4, k, d + 1);
            for (int m = d - 3; m <= d + 1; ++m)
                CHECK(max_abs(sub(c.coeff(m), scale(N[m] / (d - 3), E))) < 1e-10 * max_abs(E));
            for (int m = 0; m <= d; ++m) CHECK(max_residual(c, m) < 1e-8);
        }
        SUBCASE("divergent data is rejected with the measured norm") {
            GridField E(g, lower_slots(1), 1, {true, 3 - d});
            for (auto& c : E.c) c = MField(g, 1);
            E.c[1] = MField::from_function(g, [&](std::size_t p) { return cplx(0, std::sin(g->coord(p, 1))); });
            try {
                electric_continue(e, E, 6);
                FAIL("expected a precondition error");
            } catch (const PreconditionError& err) {
                CHECK(err.measured() > 0.5);
            }
        }
    }

    TEST_CASE("gauge transformations") {
        const int d = 7;
        auto g = Grid::make({16, 16, 2, 2, 2, 2});
        auto bg = CollarBackground::flat(d, g);

        SUBCASE("identity frame changes nothing") {
            auto A0 = random_connection(g, LieAlgebraSpec::su(2), 2, 1, 0.3, {0, 1});
            auto e = magnetic_expand(bg, A0, d - 4, LieAlgebraSpec::su(2));
            auto t = gauge_transform(e, {MField::identity(g, 2)});
            for (int m = 0; m <= d - 4; ++m) CHECK(max_abs(sub(t.coeff(m), e.coeff(m))) < 1e-13 * max_abs(A0));
        }
        SUBCASE("abelian frame exp(i r chi) leaves the obstruction unchanged") {
            auto A0 = random_connection(g, LieAlgebraSpec::u1(), 2, 1, 0.3, {0, 1});
            auto e = magnetic_expand(bg, A0, d - 4);
            MField chi = fourier_sum(g, {{0.4, {1, 1, 0, 0, 0, 0}, true}});
            std::vector<MField> U{MField::identity(g, 1)};
            MField term = MField::identity(g, 1);
            for (int m = 1; m <= d - 3; ++m) {
                term = (cplx(0, 1.0 / m) * term) * chi;
                U.push_back(term);
            }
            auto k0 = obstruction_extract(e);
            auto k1 = obstruction_extract(gauge_transform(e, U));
            CHECK(max_abs(sub(k0.kbar, k1.kbar)) < 1e-9 * max_abs(k0.kbar));
        }
        SUBCASE("su(2) frame 1 + r beta keeps the obstruction") {
            auto A0 = random_connection(g, LieAlgebraSpec::su(2), 12, 1, 0.3, {0, 1});
            auto e = magnetic_expand(bg, A0, d - 4, LieAlgebraSpec::su(2));
            const auto gens = LieAlgebraSpec::su(2).generators();
            MField beta = 0.3 * MField::constant(g, 2, gens[1]);
            auto k0 = obstruction_extract(e);
            auto k1 = obstruction_extract(gauge_transform(e, {MField::identity(g, 2), beta}));
            CHECK(max_abs(sub(k0.kbar, k1.kbar)) < 1e-9 * max_abs(k0.kbar));
        }
        SUBCASE("singular frame is rejected") {
            auto A0 = random_connection(g, LieAlgebraSpec::u1(), 2, 1, 0.3, {0, 1});
            auto e = magnetic_expand(bg, A0, d - 5);
            CHECK_THROWS(gauge_transform(e, {MField::scalar(g, 0.0)}));
        }
    }
}
