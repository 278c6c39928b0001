#include "doctest.h"

#include "biext/zmatrix.hpp"
#include "oracles.hpp"

using namespace biext;

namespace {

void check_snf_contract(const IntMatrix& m) {
    SnfResult r = smith_normal_form(m);
    CHECK(r.u * m * r.v == r.s);
    CHECK(abs(r.u.det()) == 1);
    CHECK(abs(r.v.det()) == 1);
    CHECK(r.u * r.uinv == IntMatrix::identity(m.rows()));
    CHECK(r.v * r.vinv == IntMatrix::identity(m.cols()));
    auto d = r.diag();
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (i + 1 < d.size() && d[i + 1] != 0) {
            REQUIRE(d[i] != 0);
            CHECK(d[i + 1] % d[i] == 0);
        }
    }
    // Off-diagonal must vanish.
    for (std::size_t i = 0; i < r.s.rows(); ++i)
        for (std::size_t j = 0; j < r.s.cols(); ++j)
            if (i != j) CHECK(r.s.at(i, j) == 0);
}

}  // namespace

TEST_CASE("snf: identity is fixed") {
    IntMatrix m = IntMatrix::identity(2);
    SnfResult r = smith_normal_form(m);
    CHECK(r.s == m);
}

TEST_CASE("snf: [[2,4],[6,8]] has invariant factors 2,4") {
    IntMatrix m = IntMatrix::from_rows({{2, 4}, {6, 8}});
    // Expected values frozen from the determinantal-divisor oracle.
    auto inv = oracle::invariant_factors(m);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 2);
    CHECK(inv[1] == 4);
    SnfResult r = smith_normal_form(m);
    CHECK(r.s.at(0, 0) == 2);
    CHECK(r.s.at(1, 1) == 4);
    check_snf_contract(m);
}

TEST_CASE("snf: zero matrix") {
    IntMatrix m(1, 1);
    SnfResult r = smith_normal_form(m);
    CHECK(r.s.at(0, 0) == 0);
    CHECK(r.rank == 0);
}

TEST_CASE("snf: randomized contract and oracle agreement") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 60; ++iter) {
        IntMatrix m = oracle::random_matrix(rng, 8, -50, 50);
        check_snf_contract(m);
        // Nonzero diagonal must match the determinantal divisors.
        SnfResult r = smith_normal_form(m);
        auto inv = oracle::invariant_factors(m);
        REQUIRE(r.rank == inv.size());
        for (std::size_t i = 0; i < inv.size(); ++i) CHECK(r.s.at(i, i) == inv[i]);
    }
}

TEST_CASE("solve finds exact integer solutions") {
    IntMatrix m = IntMatrix::from_rows({{2, 0}, {0, 3}});
    auto x = solve(m, {mpz_class(4), mpz_class(9)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solve(m, {mpz_class(1), mpz_class(0)}).has_value());
}

TEST_CASE("solve: randomized round trips") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> val(-9, 9);
    for (int iter = 0; iter < 40; ++iter) {
        IntMatrix m = oracle::random_matrix(rng, 5, -9, 9);
        std::vector<mpz_class> x(m.cols());
        for (auto& v : x) v = val(rng);
        auto b = m.apply(x);
        auto sol = solve(m, b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
}

TEST_CASE("kernel basis spans the kernel") {
    IntMatrix m = IntMatrix::from_rows({{1, 2, 3}});
    IntMatrix k = kernel_basis(m);
    CHECK(k.cols() == 2);
    CHECK((m * k).is_zero());

    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 30; ++iter) {
        IntMatrix a = oracle::random_matrix(rng, 6, -10, 10);
        IntMatrix kb = kernel_basis(a);
        CHECK((a * kb).is_zero());
        SnfResult r = smith_normal_form(a);
        CHECK(kb.cols() == a.cols() - r.rank);
    }
}

TEST_CASE("preimage lattice characterizes solvable congruences") {
    // { x : [[1,0],[0,1]] x in span{(2,0),(0,3)} } = 2Z x 3Z
    IntMatrix m = IntMatrix::identity(2);
    IntMatrix r = IntMatrix::from_rows({{2, 0}, {0, 3}});
    IntMatrix lat = preimage_lattice(m, r);
    // Lattice must contain (2,0) and (0,3) and nothing with x0 = 1.
    auto in_lat = [&](long a, long b) {
        return solve(lat, {mpz_class(a), mpz_class(b)}).has_value();
    };
    CHECK(in_lat(2, 0));
    CHECK(in_lat(0, 3));
    CHECK(in_lat(4, -3));
    CHECK_FALSE(in_lat(1, 0));
    CHECK_FALSE(in_lat(0, 1));
}
