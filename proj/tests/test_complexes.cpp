#include "doctest.h"

#include "biext/complexes.hpp"
#include "oracles.hpp"

using namespace biext;

TEST_CASE("homology of Z --2--> Z") {
    BoundedComplex c(0, {1, 1}, {IntMatrix::from_rows({{2}})});
    // Degree 1: coker(x2) = Z/2.  Oracle: SNF of the differential.
    Homology h1 = homology(c, 1);
    REQUIRE(h1.group.torsion().size() == 1);
    CHECK(h1.group.torsion()[0] == 2);
    CHECK(h1.group.rank() == 0);
    // Degree 0: ker(x2) = 0.
    Homology h0 = homology(c, 0);
    CHECK(h0.group.is_trivial());
}

TEST_CASE("homology of the zero complex and identity complex") {
    BoundedComplex z(0, {2, 2}, {IntMatrix(2, 2)});
    CHECK(homology(z, 0).group.rank() == 2);
    CHECK(homology(z, 1).group.rank() == 2);

    BoundedComplex id(0, {1, 1}, {IntMatrix::identity(1)});
    CHECK(homology(id, 0).group.is_trivial());
    CHECK(homology(id, 1).group.is_trivial());
}

TEST_CASE("homology: degree out of range throws") {
    BoundedComplex c(0, {1, 1}, {IntMatrix::from_rows({{2}})});
    CHECK_THROWS_AS(homology(c, 5), Error);
}

TEST_CASE("class_of and lift are mutually inverse; boundaries die") {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<long> val(-6, 6);
    for (int iter = 0; iter < 25; ++iter) {
        // Random 3-term complex: build d1 first, then a d0 with d1*d0 = 0 by
        // drawing d0 columns from ker(d1).
        IntMatrix d1 = oracle::random_matrix(rng, 4, -4, 4);
        IntMatrix kb = kernel_basis(d1);
        std::uniform_int_distribution<std::size_t> ncols(1, 3);
        std::size_t m = ncols(rng);
        IntMatrix d0(d1.cols(), m);
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<mpz_class> coef(kb.cols());
            for (auto& v : coef) v = val(rng);
            auto col = kb.apply(coef);
            for (std::size_t i = 0; i < d0.rows(); ++i) d0.at(i, j) = col[i];
        }
        BoundedComplex c(0, {m, d1.cols(), d1.rows()}, {d0, d1});
        Homology h = homology(c, 1);

        // class_of(lift(e)) = e for random classes.
        for (int t = 0; t < 5; ++t) {
            GroupElement e(h.group.coords());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = val(rng);
            e = h.group.reduce(e);
            CHECK(h.group.eq(h.class_of(h.lift(e)), e));
        }
        // class_of vanishes on boundaries.
        std::vector<mpz_class> x(m);
        for (auto& v : x) v = val(rng);
        CHECK(h.group.is_zero(h.class_of(d0.apply(x))));

        // Rank accounting: rank H^1 = dim ker d1 - rank d0.
        SnfResult s0 = smith_normal_form(d0);
        SnfResult s1 = smith_normal_form(d1);
        CHECK(h.group.rank() == d1.cols() - s1.rank - s0.rank);
    }
}

TEST_CASE("complex validation rejects non-complexes") {
    CHECK_THROWS_AS(BoundedComplex(0, {1, 1, 1},
                                   {IntMatrix::identity(1), IntMatrix::identity(1)}),
                    Error);
}
