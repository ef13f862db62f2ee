#include <cmath>
#include <numbers>

#include "doctest.h"

#include "ccym/bessel.hpp"
#include "ccym/errors.hpp"
#include "ccym/mode_ode.hpp"
#include "oracles.hpp"

using namespace ccym;
using doctest::Approx;

TEST_SUITE("mode_ode") {
    TEST_CASE("Bessel K of order one half has a closed form") {
        for (double x : {1e-3, 0.1, 1.0, 7.5, 40.0}) {
            const auto b = bessel_KI(0.5, x);
            const double ref = std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x);
            CHECK(std::abs(b.K - ref) / ref < 1e-10);
        }
        CHECK(bessel_KI(0.0, 1e-9).I == Approx(1.0).epsilon(1e-12));
        CHECK_THROWS_AS(bessel_KI(1.0, 0.0), DomainError);
    }

    TEST_CASE("Bessel Wronskian and library agreement") {
        for (double nu : {0.0, 1.0, 1.5, 2.5, 3.0}) {
            for (double x : {1e-3, 0.5, 3.0, 20.0, 50.0}) {
                const auto b = bessel_KI(nu, x);
                CHECK(std::abs(x * (b.K * b.dI - b.dK * b.I) - 1.0) < 1e-10);
                const double ref = std::cyl_bessel_k(nu, x);
                CHECK(std::abs(b.K - ref) / ref < 1e-10);
            }
        }
    }

    TEST_CASE("Dirichlet branch for the Maxwell mode in d = 6") {
        const double k = 1.7;
        auto s = frobenius_series(RadialODE::maxwell(6, k), Branch::Dirichlet, 10);
        CHECK(s.coeffs[0] == 1.0);
        CHECK(s.coeffs[1] == 0.0);
        CHECK(s.coeffs[2] == Approx(-k * k / 2).epsilon(1e-14));
        // odd coefficients below the Neumann exponent vanish exactly
        CHECK(s.coeffs[3] == 0.0);
    }

    TEST_CASE("k = 0 branches are monomials") {
        auto D = frobenius_series(RadialODE::maxwell(8, 0.0), Branch::Dirichlet, 12);
        auto N = frobenius_series(RadialODE::maxwell(8, 0.0), Branch::Neumann, 12);
        for (int m = 1; m <= 12; ++m) CHECK(D.coeffs[m] == 0.0);
        for (int m = 0; m <= 12; ++m) CHECK(N.coeffs[m] == (m == 5 ? 1.0 : 0.0));
    }

    TEST_CASE("series match the independent recursion and solve the ODE") {
        for (int d = 5; d <= 10; ++d)
            for (double k : {1.0, 2.0}) {
                const auto ode = RadialODE::maxwell(d, k);
                const bool even_gap = (ode.c + 1) % 2 == 1;
                const Branch b = even_gap ? Branch::Dirichlet : Branch::Log;
                auto s = frobenius_series(ode, b, 16);
                if (even_gap) {
                    const auto ref = oracle::series_dirichlet(ode.c, k, 16);
                    for (int m = 0; m <= 16; ++m) CHECK(s.coeffs[m] == Approx(ref[m]).epsilon(1e-13));
                    const auto refN = oracle::series_neumann(ode.c, k, 16);
                    auto n = frobenius_series(ode, Branch::Neumann, 16);
                    for (int m = 0; m <= 16; ++m) CHECK(n.coeffs[m] == Approx(refN[m]).epsilon(1e-13));
                }
                for (int i = 1; i <= 50; ++i) {
                    const double y = 0.004 * i;
                    const double r = ode.residual(y, s.value(y), s.derivative(y, 1), s.derivative(y, 2));
                    CHECK(std::abs(r) < 1e-9);
                }
            }
    }

    TEST_CASE("resonant Dirichlet recursion is refused") {
        CHECK_THROWS_AS(frobenius_series(RadialODE::maxwell(5, 1.0), Branch::Dirichlet, 6), ResonanceError);
    }

    TEST_CASE("global solution satisfies the ODE") {
        for (int d : {5, 6, 7, 8}) {
            const auto ode = RadialODE::maxwell(d, 1.3);
            CHECK(global_mode_solution(ode, 1e-8) == Approx(1.0).epsilon(1e-6));
            for (int i = 1; i <= 50; ++i) {
                const double y = 0.1 * i;
                const double r = ode.residual(y, global_mode_solution(ode, y, 0), global_mode_solution(ode, y, 1),
                                              global_mode_solution(ode, y, 2));
                CHECK(std::abs(r) < 1e-9);
            }
        }
    }

    TEST_CASE("even-d Maxwell DtN values agree with inward shooting") {
        // frozen values, confirmed by the RK4 decay oracle below
        CHECK(maxwell_dtn(8, 1.0).value == Approx(-1.0 / 45).epsilon(1e-12));
        CHECK(maxwell_dtn(6, 2.0).value == Approx(8.0 / 3).epsilon(1e-12));
        for (double k : {0.7, 1.0, 2.0}) {
            CHECK(maxwell_dtn(8, k).value == Approx(-std::pow(k, 5) / 45).epsilon(1e-12));
            CHECK(maxwell_dtn(6, k).value == Approx(std::pow(k, 3) / 3).epsilon(1e-12));
            CHECK(std::abs(oracle::shooting_dtn(4, k) - maxwell_dtn(8, k).value) < 1e-8 * std::pow(k, 5));
            CHECK(std::abs(oracle::shooting_dtn(2, k) - maxwell_dtn(6, k).value) < 1e-8 * std::pow(k, 3));
        }
        CHECK_THROWS_AS(maxwell_dtn(4, 1.0), DomainError);
    }

    TEST_CASE("odd-d log coefficient agrees with the K1 expansion") {
        for (double k : {1.0, 2.0}) {
            const auto rec = maxwell_dtn(5, k);
            CHECK(rec.log_case);
            CHECK(rec.log_coeff == Approx(k * k / 2).epsilon(1e-12));
            CHECK(std::abs(rec.log_coeff - oracle::k1_log_coefficient(k)) < 1e-7 * k * k);
        }
    }

    TEST_CASE("scalar DtN values") {
        for (double k : {0.5, 1.0, 3.0}) {
            CHECK(scalar_dtn(4, k).value == Approx(k * k * k / 3).epsilon(1e-12));
            CHECK(scalar_dtn(2, k).value == Approx(-k).epsilon(1e-12));
            CHECK(std::abs(oracle::shooting_dtn(2, k) - scalar_dtn(4, k).value) < 1e-8 * k * k * k);
        }
    }

    TEST_CASE("scalar boundary operators on harmonic modes") {
        const double k = 1.4;
        // d = 4: f = exp(-k y)(1 + k y)
        ScalarJet jet{1.0, 0.0, -k * k, 2 * k * k * k};
        auto ops = scalar_boundary_ops(jet, 4, 0, k);
        CHECK(std::abs(ops.delta1) < 1e-12);
        CHECK(std::abs(ops.delta2) < 1e-12);
        CHECK(-ops.delta3 / 6 == Approx(scalar_dtn(4, k).value).epsilon(1e-9));

        // d = 6: decaying series through y^3
        auto s = frobenius_series(RadialODE::scalar(6, k), Branch::Dirichlet, 4);
        ScalarJet j6{s.coeffs[0], s.coeffs[1], 2 * s.coeffs[2], 6 * s.coeffs[3]};
        auto o6 = scalar_boundary_ops(j6, 6, 0, k);
        CHECK(std::abs(o6.delta1) < 1e-9);
        CHECK(std::abs(o6.delta2) < 1e-9);
        CHECK(std::abs(o6.delta3) < 1e-9);

        // constant f
        auto oc = scalar_boundary_ops(ScalarJet{1.0, 0, 0, 0}, 5, 0, 0.0);
        CHECK(oc.delta1 == 0.0);
        CHECK(oc.delta3 == 0.0);
        CHECK_THROWS(scalar_boundary_ops(jet, 4, 0, k, true));
    }

    TEST_CASE("double factorial and harmonic numbers") {
        CHECK(double_factorial(5) == Approx(15));
        CHECK(double_factorial(-1) == Approx(1));
        CHECK(double_factorial(0) == Approx(1));
        CHECK(harmonic_number(3) == Approx(11.0 / 6));
    }
}
