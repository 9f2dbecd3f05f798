#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/nctorus.hpp"

#include <cmath>
#include <random>

using namespace grpd;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

TorusElement mono(double theta, int k, int m, std::complex<double> c = 1.0) {
    return torus_monomial(torus_zero(theta), k, m, c);
}

}  // namespace

TEST_CASE("commutation relation v u = e^{2 pi i theta} u v") {
    const double theta = 0.37;
    TorusElement u = mono(theta, 1, 0), v = mono(theta, 0, 1);
    TorusElement vu = torus_mul(v, u);
    TorusElement uv = torus_mul(u, v);
    const std::complex<double> tw(std::cos(2 * M_PI * theta), std::sin(2 * M_PI * theta));
    CHECK(torus_dist1(vu, torus_scale(uv, tw)) < 1e-14);

    // (uv) u = e^{2 pi i theta} u^2 v.
    TorusElement lhs = torus_mul(torus_mul(u, v), u);
    TorusElement rhs = torus_scale(torus_mul(torus_mul(u, u), v), tw);
    CHECK(torus_dist1(lhs, rhs) < 1e-14);

    // 1 a = a, u u^-1 = 1.
    TorusElement one = mono(theta, 0, 0);
    CHECK(torus_dist1(torus_mul(one, vu), vu) < 1e-15);
    CHECK(torus_dist1(torus_mul(u, mono(theta, -1, 0)), one) < 1e-15);

    CHECK_THROWS_AS(torus_mul(u, mono(0.11, 0, 1)), ThetaMismatch);
}

TEST_CASE("star structure") {
    const double theta = kGolden;
    TorusElement u = mono(theta, 1, 0), v = mono(theta, 0, 1);
    // u* = u^-1.
    CHECK(torus_dist1(torus_star(u), mono(theta, -1, 0)) < 1e-15);
    // (uv)* = e^{2 pi i theta} u^-1 v^-1.
    const std::complex<double> tw(std::cos(2 * M_PI * theta), std::sin(2 * M_PI * theta));
    CHECK(torus_dist1(torus_star(torus_mul(u, v)),
                      torus_scale(mono(theta, -1, -1), tw)) < 1e-14);
    // a** = a on a random element.
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> d(-1, 1);
    TorusElement a = torus_zero(theta);
    for (int t = 0; t < 6; ++t)
        a = torus_add(a, mono(theta, rng() % 7 - 3, rng() % 7 - 3, {d(rng), d(rng)}));
    CHECK(torus_dist1(torus_star(torus_star(a)), a) < 1e-13);
}

TEST_CASE("multiplication is associative and star anti-multiplicative") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> d(-1, 1);
    const double theta = kGolden;
    for (int trial = 0; trial < 12; ++trial) {
        auto rand_elem = [&]() {
            TorusElement a = torus_zero(theta);
            for (int t = 0; t < 5; ++t)
                a = torus_add(a,
                              mono(theta, static_cast<int>(rng() % 9) - 4,
                                   static_cast<int>(rng() % 9) - 4, {d(rng), d(rng)}));
            return a;
        };
        TorusElement a = rand_elem(), b = rand_elem(), c = rand_elem();
        CHECK(torus_dist1(torus_mul(torus_mul(a, b), c), torus_mul(a, torus_mul(b, c))) <
              1e-12);
        CHECK(torus_dist1(torus_star(torus_mul(a, b)),
                          torus_mul(torus_star(b), torus_star(a))) < 1e-12);
    }
}

TEST_CASE("Dirichlet factor: k=1, theta=1/2, n=1 gives -1/3") {
    CHECK(dirichlet_factor(0.5, 1, false) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
    // Literal: (1/3)(e^{-i pi} + 1 + e^{i pi}) = -1/3.
    TorusElement a = torus_zero_rational(1, 2);
    a = torus_add(a, torus_monomial(a, 1, 0, 1.0));
    TorusElement lit = phi2_literal(a, 1);
    CHECK(std::abs(lit.coeffs.at({1, 0}) - std::complex<double>(-1.0 / 3.0)) < 1e-12);
}

TEST_CASE("phi1 fixes m=0 modes, phi2 fixes k=0 modes") {
    const double theta = kGolden;
    TorusElement uk = mono(theta, 3, 0);
    CHECK(torus_dist1(phi1_partial(uk, 7), uk) < 1e-15);
    TorusElement vm = mono(theta, 0, -2);
    CHECK(torus_dist1(phi2_partial(vm, 7), vm) < 1e-15);
}

TEST_CASE("closed form matches literal sums across modes and levels") {
    const double theta = kGolden;
    for (int k = -8; k <= 8; k += 3)
        for (int n : {1, 4, 32, 128, 512}) {
            TorusElement a = mono(theta, k, 2);
            AveragingReport rep = averaging_report(a, n);
            CHECK(rep.max_literal_dev < 1e-10);
        }
    // And for a multi-mode element.
    TorusElement a = torus_add(mono(theta, 1, 0), mono(theta, 0, 1));
    a = torus_add(a, mono(theta, -4, 5, {0.3, -0.7}));
    for (int n : {2, 16, 64}) CHECK(averaging_report(a, n).max_literal_dev < 1e-10);
}

TEST_CASE("phi factors never exceed 1 in modulus and are linear/unital") {
    const double theta = kGolden;
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = static_cast<int>(rng() % 17) - 8;
        const int n = 1 + static_cast<int>(rng() % 200);
        CHECK(std::abs(dirichlet_factor(k * theta, n, false)) <= 1.0 + 1e-12);
    }
    TorusElement one = mono(theta, 0, 0);
    CHECK(torus_dist1(phi1_partial(one, 9), one) < 1e-15);
    CHECK(torus_dist1(phi2_partial(one, 9), one) < 1e-15);
}

TEST_CASE("simplicity experiment for a = u + v at the golden ratio") {
    TorusElement a = torus_add(mono(kGolden, 1, 0), mono(kGolden, 0, 1));
    SimplicityReport rep = simplicity_experiment(a, 4000, 1e-3);
    CHECK(rep.nu == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.reached);
    CHECK(rep.first_below <= 2000);

    // a = 1: c_n = 1 for every n.
    TorusElement one = mono(kGolden, 0, 0);
    SimplicityReport triv = simplicity_experiment(one, 10, 1e-12);
    CHECK(triv.reached);
    CHECK(triv.first_below == 1);
    CHECK(triv.nu == doctest::Approx(1.0));

    // a = u^3: a* a = 1 already, nu = 1.
    SimplicityReport cubed = simplicity_experiment(mono(kGolden, 3, 0), 10, 1e-12);
    CHECK(cubed.nu == doctest::Approx(1.0));
    CHECK(cubed.reached);

    CHECK_THROWS_AS(simplicity_experiment(torus_zero(kGolden), 10, 1e-3), ZeroElement);
}

TEST_CASE("rational theta: mode k with q | k never decays") {
    TorusElement a = torus_zero_rational(1, 3);
    a = torus_add(a, torus_monomial(a, 3, 1, 1.0));
    for (int n : {1, 10, 100, 1000}) {
        TorusElement out = phi2_partial(a, n);
        CHECK(std::abs(out.coeffs.at({3, 1}) - std::complex<double>(1.0)) < 1e-15);
    }
    // Whereas k = 1 at theta = 1/3 is suppressed at matching levels.
    TorusElement b = torus_zero_rational(1, 3);
    b = torus_add(b, torus_monomial(b, 1, 0, 1.0));
    TorusElement out = phi2_partial(b, 1);  // (1/3)(1 + 2 cos(2 pi/3)) = 0
    CHECK(torus_norm1(out) < 1e-14);
}

TEST_CASE("clock-shift representation") {
    ClockShiftReport p2 = clock_shift_check(2, 2);
    CHECK(p2.ok(1e-12));  // Pauli pair: X and Z anticommute
    ClockShiftReport p3 = clock_shift_check(3, 2);
    CHECK(p3.ok(1e-12));
    ClockShiftReport p5 = clock_shift_check(5, 2);
    CHECK(p5.ok(1e-10));
    CHECK_THROWS_AS(clock_shift_check(1), std::invalid_argument);
}

TEST_CASE("crossed product bridge for q = 1..4") {
    for (int q = 1; q <= 4; ++q) {
        CrossedProductReport rep = crossed_product_bridge(q);
        CHECK(rep.ok());
        CHECK(rep.dim == q * q);
    }
}
