#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "grpd/rref.hpp"

#include <random>

using namespace grpd;

namespace {

Scalar rnd_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-3, 3);
    return {Rational(d(rng)), Rational(d(rng))};
}

SparseVec rnd_vec(std::mt19937& rng, int dim) {
    std::vector<Scalar> v(dim);
    for (auto& x : v) x = rnd_scalar(rng);
    return sparse_from_dense(v);
}

}  // namespace

TEST_CASE("rational parsing round-trips and rejects junk") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-6/8") == Rational(-3, 4));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(format_rational(parse_rational("10/4")) == "5/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("scalar field arithmetic") {
    Scalar i = scalar_i();
    CHECK(i * i == Scalar(-1));
    Scalar z{Rational(1, 2), Rational(-3)};
    CHECK(z * z.inverse() == Scalar(1));
    CHECK(z.conj().conj() == z);
    CHECK((z + z.conj()).im == 0);
}

TEST_CASE("sparse axpy agrees with dense arithmetic") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int dim = 12;
        SparseVec a = rnd_vec(rng, dim), b = rnd_vec(rng, dim);
        Scalar c = rnd_scalar(rng);
        auto da = dense_from_sparse(a, dim);
        auto db = dense_from_sparse(b, dim);
        for (int k = 0; k < dim; ++k) da[k] += c * db[k];
        CHECK(sparse_axpy(a, c, b) == sparse_from_dense(da));
    }
}

TEST_CASE("row reducer computes rank like the dense kernels") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const int rows = 8, cols = 10;
        std::vector<SparseVec> sparse_rows;
        std::vector<std::vector<Scalar>> dense;
        for (int r = 0; r < rows; ++r) {
            SparseVec v = rnd_vec(rng, cols);
            sparse_rows.push_back(v);
            dense.push_back(dense_from_sparse(v, cols));
        }
        const int r1 = sparse_rank(sparse_rows);
        const int r2 = dense_rank_serial(dense);
        const int r3 = dense_rank_parallel(dense);
        CHECK(r1 == r2);
        CHECK(r2 == r3);
    }
}

TEST_CASE("row reducer residual is zero exactly on span members") {
    RowReducer rr;
    SparseVec v1 = {{0, Scalar(1)}, {2, Scalar(2)}};
    SparseVec v2 = {{1, Scalar(1)}, {2, Scalar(-1)}};
    rr.add(v1);
    rr.add(v2);
    CHECK(rr.rank() == 2);
    SparseVec w = sparse_axpy(sparse_scale(v1, Scalar(3)), Scalar(-2), v2);
    CHECK(rr.contains(w));
    CHECK_FALSE(rr.contains(sparse_unit(2)));
    // The canonical RREF is independent of the generating order.
    RowReducer other;
    other.add(w);
    other.add(v2);
    other.add(v1);
    CHECK(other.pivot_rows() == rr.pivot_rows());
}

TEST_CASE("linear solver finds witnesses and proves infeasibility") {
    std::vector<SparseVec> rows = {
        {{0, Scalar(1)}, {1, Scalar(1)}},
        {{0, Scalar(1)}, {1, Scalar(-1)}},
    };
    auto sol = solve_linear_system(rows, {Scalar(2), Scalar(0)}, 2);
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Scalar(1));
    CHECK((*sol)[1] == Scalar(1));

    std::vector<SparseVec> contradictory = {
        {{0, Scalar(1)}, {1, Scalar(1)}},
        {{0, Scalar(1)}, {1, Scalar(1)}},
    };
    CHECK_FALSE(solve_linear_system(contradictory, {Scalar(1), Scalar(2)}, 2).has_value());
}

TEST_CASE("solver on random consistent systems returns exact solutions") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 6, m = 9;
        std::vector<SparseVec> rows;
        std::vector<Scalar> x_true(n);
        for (auto& x : x_true) x = rnd_scalar(rng);
        std::vector<Scalar> rhs;
        for (int r = 0; r < m; ++r) {
            SparseVec row = rnd_vec(rng, n);
            Scalar b;
            for (const auto& [j, c] : row) b += c * x_true[j];
            rows.push_back(row);
            rhs.push_back(b);
        }
        auto sol = solve_linear_system(rows, rhs, n);
        REQUIRE(sol.has_value());
        for (int r = 0; r < m; ++r) {
            Scalar b;
            for (const auto& [j, c] : rows[r]) b += c * (*sol)[j];
            CHECK(b == rhs[r]);
        }
    }
}
