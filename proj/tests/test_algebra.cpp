#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/algebra.hpp"

#include <random>

using namespace grpd;

namespace {

GroupoidHandle make(FiniteGroupoid g) {
    return std::make_shared<const FiniteGroupoid>(std::move(g));
}

std::vector<std::vector<int>> z2_table() { return {{0, 1}, {1, 0}}; }

ConvAlgebraHandle pair_algebra(int n) { return make_algebra_counting(make(pair_groupoid(n))); }

ConvAlgebraHandle z2_algebra() {
    return make_algebra_counting(make(group_groupoid(z2_table())));
}

/// C^X: the unit groupoid on |X| points with pointwise multiplication.
ConvAlgebraHandle cx_algebra(int n) {
    std::vector<std::vector<int>> cover;
    for (int i = 0; i < n; ++i) cover.push_back({i});
    return make_algebra_counting(make(cech_groupoid(n, cover)));
}

}  // namespace

TEST_CASE("pair groupoid convolution is the matrix-unit calculus") {
    auto a = pair_algebra(2);
    // delta_(0,1) * delta_(1,0) = delta_(0,0); arrow (x,y) has index 2x+y.
    AlgebraElement e01 = delta(a, 1), e10 = delta(a, 2);
    CHECK(convolve(e01, e10).coeffs == delta(a, 0).coeffs);
    CHECK(convolve(e10, e01).coeffs == delta(a, 3).coeffs);
    // Non-matching inner indices annihilate.
    CHECK(convolve(e01, e01).coeffs == zero_element(a).coeffs);
    // a * 0 = 0.
    CHECK(convolve(e01, zero_element(a)).coeffs == zero_element(a).coeffs);
}

TEST_CASE("matrix-unit identity delta_(x,z) * delta_(z',y) across n") {
    for (int n : {2, 3, 4}) {
        auto a = pair_algebra(n);
        for (int x = 0; x < n; ++x)
            for (int z = 0; z < n; ++z)
                for (int z2 = 0; z2 < n; ++z2)
                    for (int y = 0; y < n; ++y) {
                        auto prod = convolve(delta(a, x * n + z), delta(a, z2 * n + y));
                        auto expect = z == z2 ? delta(a, x * n + y) : zero_element(a);
                        CHECK(prod.coeffs == expect.coeffs);
                    }
    }
}

TEST_CASE("parallel and serial convolution agree") {
    std::mt19937 rng(5);
    auto a = pair_algebra(4);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int trial = 0; trial < 10; ++trial) {
        AlgebraElement u = zero_element(a), v = zero_element(a);
        for (auto& c : u.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
        for (auto& c : v.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
        CHECK(convolve(u, v).coeffs == convolve_serial(u, v).coeffs);
    }
}

TEST_CASE("Z2 group algebra relations") {
    auto a = z2_algebra();
    AlgebraElement dm = delta(a, 1);  // delta_{-1}
    CHECK(convolve(dm, dm).coeffs == delta(a, 0).coeffs);
    // (i delta_{-1})^* = -i delta_{-1}.
    AlgebraElement x = zero_element(a);
    x.coeffs[1] = scalar_i();
    CHECK(star(x).coeffs[1] == -scalar_i());
    CHECK(star(x).coeffs[0] == Scalar(0));
}

TEST_CASE("star is an involutive anti-homomorphism") {
    auto a = pair_algebra(2);
    // delta_(0,1)^* = delta_(1,0).
    CHECK(star(delta(a, 1)).coeffs == delta(a, 2).coeffs);
    // Unit deltas are self-adjoint.
    CHECK(star(delta(a, 0)).coeffs == delta(a, 0).coeffs);
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        AlgebraElement u = zero_element(a), v = zero_element(a);
        for (auto& c : u.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
        for (auto& c : v.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
        CHECK(star(star(u)).coeffs == u.coeffs);
        CHECK(star(convolve(u, v)).coeffs == convolve(star(v), star(u)).coeffs);
    }
}

TEST_CASE("unit element under counting and weighted Haar") {
    auto a = pair_algebra(2);
    AlgebraElement e = unit_element(a);
    CHECK(e.coeffs[0] == Scalar(1));
    CHECK(e.coeffs[3] == Scalar(1));
    CHECK(e.coeffs[1] == Scalar(0));

    // Terminal groupoid with w(1_*) = 2: e = 1/2 delta.
    auto t = make(pair_groupoid(1));
    auto weighted = make_algebra(t, validate_haar(*t, {Rational(2)}));
    CHECK(unit_element(weighted).coeffs[0] == Scalar(Rational(1, 2)));
}

TEST_CASE("structure constants: terminal, pair(2), Z2") {
    auto t = make_algebra_counting(make(pair_groupoid(1)));
    AlgebraTable tt = structure_constants(*t);
    CHECK(tt.product(0, 0) == sparse_unit(0));

    AlgebraTable p2 = structure_constants(*pair_algebra(2));
    int nonzero = 0;
    for (const auto& v : p2.mult) nonzero += !v.empty();
    CHECK(nonzero == 8);  // composable pairs (x,z)(z,y): 2^3 of the 16
    CHECK_NOTHROW(p2.check_associative());

    AlgebraTable z2 = structure_constants(*z2_algebra());
    CHECK(z2.product(1, 1) == sparse_unit(0));
    CHECK(z2.product(0, 1) == sparse_unit(1));
}

TEST_CASE("associativity holds exactly on generated groupoids") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> d(-2, 2);
    for (auto alg : {pair_algebra(3), z2_algebra(), cx_algebra(3)}) {
        for (int trial = 0; trial < 5; ++trial) {
            AlgebraElement u = zero_element(alg), v = zero_element(alg), w = zero_element(alg);
            for (auto& c : u.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
            for (auto& c : v.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
            for (auto& c : w.coeffs) c = {Rational(d(rng)), Rational(d(rng))};
            CHECK(convolve(convolve(u, v), w).coeffs == convolve(u, convolve(v, w)).coeffs);
        }
        CHECK_NOTHROW(structure_constants(*alg).check_associative());
    }
}

TEST_CASE("Z2 algebra is isomorphic to C x C via the parity basis") {
    auto z2 = z2_algebra();
    auto two_points = cx_algebra(2);
    AlgebraTable a = structure_constants(*z2);
    AlgebraTable b = structure_constants(*two_points);
    // a_+ = (delta_1 + delta_-1)/2 and a_- = (delta_1 - delta_-1)/2 are the
    // orthogonal idempotents; the iso sends delta_1 -> e_0 + e_1 and
    // delta_-1 -> e_0 - e_1.
    Matrix g = {{Scalar(1), Scalar(1)}, {Scalar(1), Scalar(-1)}};
    IsoCertificate cert = check_algebra_iso(g, a, b);
    CHECK(cert.bijective);
    CHECK(cert.multiplicative);

    // Sanity: a_+ a_+ = a_+ in the Z2 algebra itself.
    AlgebraElement ap = zero_element(z2);
    ap.coeffs[0] = ap.coeffs[1] = Scalar(Rational(1, 2));
    CHECK(convolve(ap, ap).coeffs == ap.coeffs);

    IsoCertificate id_cert =
        check_algebra_iso(Matrix{{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}}, a, a);
    CHECK(id_cert.ok());

    // Swapping delta_(0,0) and delta_(0,1) in pair(2) is not multiplicative.
    AlgebraTable p2 = structure_constants(*pair_algebra(2));
    Matrix swap(4, std::vector<Scalar>(4));
    swap[1][0] = swap[0][1] = swap[2][2] = swap[3][3] = Scalar(1);
    IsoCertificate bad = check_algebra_iso(swap, p2, p2);
    CHECK(bad.bijective);
    CHECK_FALSE(bad.multiplicative);
    CHECK(bad.failing_pair.has_value());
}

TEST_CASE("Haar rescaling is an algebra isomorphism after rescaling") {
    // G = pair(2); w' = c w with c = 3. The map a -> a/c intertwines the
    // two convolutions.
    auto g = make(pair_groupoid(2));
    auto a1 = make_algebra_counting(g);
    auto a2 = make_algebra(g, validate_haar(*g, std::vector<Rational>(4, Rational(3))));
    AlgebraTable t1 = structure_constants(*a1);
    AlgebraTable t2 = structure_constants(*a2);
    Matrix f(4, std::vector<Scalar>(4));
    for (int i = 0; i < 4; ++i) f[i][i] = Scalar(Rational(1, 3));
    IsoCertificate cert = check_algebra_iso(f, t1, t2);
    CHECK(cert.ok());
    // The compensating rescale moves the unit: e2 = e1 / 3.
    CHECK(unit_element(a2).coeffs[0] == Scalar(Rational(1, 3)));

    // Per-orbit constants on a disjoint union.
    auto du = make(disjoint_union(pair_groupoid(2), pair_groupoid(1)));
    std::vector<Rational> w(du->num_arrows(), Rational(2));
    w[4] = Rational(5);  // the terminal block gets its own constant
    auto b1 = make_algebra_counting(du);
    auto b2 = make_algebra(du, validate_haar(*du, w));
    Matrix fb(5, std::vector<Scalar>(5));
    for (int i = 0; i < 4; ++i) fb[i][i] = Scalar(Rational(1, 2));
    fb[4][4] = Scalar(Rational(1, 5));
    CHECK(check_algebra_iso(fb, structure_constants(*b1), structure_constants(*b2)).ok());
}

TEST_CASE("tensor algebra isomorphism A(G)xA(H) = A(GxH)") {
    auto t = make_algebra_counting(make(pair_groupoid(1)));
    auto z2 = z2_algebra();
    auto p2 = pair_algebra(2);

    TensorIsoResult r1 = tensor_algebra_iso(*t, *z2);
    CHECK(r1.certificate.ok());
    CHECK(r1.product_algebra->dim() == 2);

    TensorIsoResult r2 = tensor_algebra_iso(*z2, *z2);
    CHECK(r2.certificate.ok());

    TensorIsoResult r3 = tensor_algebra_iso(*p2, *z2);
    CHECK(r3.certificate.ok());
    CHECK(r3.product_algebra->dim() == 8);
}

TEST_CASE("separability sections") {
    // C^X with |X| = 3: the diagonal section is a bimodule section.
    auto cx = cx_algebra(3);
    AlgebraTable t = structure_constants(*cx);
    auto sec = find_separability_section(t, SectionSide::Bimodule);
    REQUIRE(sec.has_value());
    for (int k = 0; k < 3; ++k) {
        SparseVec img;
        for (int g = 0; g < 3; ++g)
            for (int h = 0; h < 3; ++h)
                if (!(*sec)[g * 3 + h][k].is_zero())
                    img = sparse_axpy(img, (*sec)[g * 3 + h][k], t.product(g, h));
        CHECK(img == sparse_unit(k));
    }

    // Terminal groupoid: sigma(1) = 1 (x) 1.
    auto term = make_algebra_counting(make(pair_groupoid(1)));
    auto sec_t = find_separability_section(structure_constants(*term), SectionSide::Bimodule);
    REQUIRE(sec_t.has_value());
    CHECK((*sec_t)[0][0] == Scalar(1));

    // M2 = pair(2) is a separable matrix algebra.
    auto sec_m2 =
        find_separability_section(structure_constants(*pair_algebra(2)), SectionSide::Bimodule);
    CHECK(sec_m2.has_value());

    // One-sided sections exist for any unital algebra.
    CHECK(find_separability_section(structure_constants(*z2_algebra()), SectionSide::Left)
              .has_value());
    CHECK(find_separability_section(structure_constants(*z2_algebra()), SectionSide::Right)
              .has_value());
}

TEST_CASE("ideal detection") {
    auto p2 = pair_algebra(2);
    // Zero subspace: a proper two-sided ideal.
    IdealReport zero = ideal_check(*p2, {});
    CHECK(zero.two_sided());
    CHECK(zero.proper);
    CHECK(zero.span_dim == 0);

    // span{delta_(0,1)} in pair(2) is not an ideal:
    // delta_(0,1) * delta_(1,0) = delta_(0,0) escapes.
    std::vector<Scalar> v(4);
    v[1] = Scalar(1);
    IdealReport not_ideal = ideal_check(*p2, {v});
    CHECK_FALSE(not_ideal.two_sided());
    CHECK(not_ideal.witness.has_value());

    // In A(pair(2) + terminal), the pair-component span is a proper ideal.
    auto du = make_algebra_counting(make(disjoint_union(pair_groupoid(2), pair_groupoid(1))));
    std::vector<std::vector<Scalar>> span;
    for (int i = 0; i < 4; ++i) {
        std::vector<Scalar> e(5);
        e[i] = Scalar(1);
        span.push_back(e);
    }
    IdealReport orbit_ideal = ideal_check(*du, span);
    CHECK(orbit_ideal.two_sided());
    CHECK(orbit_ideal.proper);
    CHECK(orbit_ideal.smoothness_automatic);

    // The whole algebra is an ideal but not proper.
    std::vector<std::vector<Scalar>> all;
    for (int i = 0; i < 4; ++i) {
        std::vector<Scalar> e(4);
        e[i] = Scalar(1);
        all.push_back(e);
    }
    IdealReport whole = ideal_check(*p2, all);
    CHECK(whole.two_sided());
    CHECK_FALSE(whole.proper);
}

TEST_CASE("parent mismatch is rejected") {
    auto a = pair_algebra(2);
    auto b = z2_algebra();
    CHECK_THROWS_AS(convolve(delta(a, 0), delta(b, 0)), ParentMismatch);
}
