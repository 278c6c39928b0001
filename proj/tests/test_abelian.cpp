#include "doctest.h"

#include <set>

#include "biext/abelian.hpp"
#include "oracles.hpp"

using namespace biext;

TEST_CASE("group_from_relations: single relation 2x = 0") {
    FgAbGroup g = group_from_relations(IntMatrix::from_rows({{2}}));
    CHECK(g.rank() == 0);
    REQUIRE(g.torsion().size() == 1);
    CHECK(g.torsion()[0] == 2);
}

TEST_CASE("group_from_relations: diag(2,3) collapses to Z/6") {
    // Oracle: SNF of [[2,0],[0,3]] has invariant factors 1, 6.
    auto inv = oracle::invariant_factors(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 1);
    CHECK(inv[1] == 6);
    FgAbGroup g = group_from_relations(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(g.rank() == 0);
    REQUIRE(g.torsion().size() == 1);
    CHECK(g.torsion()[0] == 6);
}

TEST_CASE("group_from_relations: no relations give a free group") {
    FgAbGroup g = group_from_relations(IntMatrix(0, 2));
    CHECK(g.rank() == 2);
    CHECK(g.torsion().empty());
}

TEST_CASE("from_generators / to_generators round trip") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> val(-20, 20);
    for (int iter = 0; iter < 30; ++iter) {
        IntMatrix rels = oracle::random_matrix(rng, 5, -8, 8);
        FgAbGroup g = group_from_relations(rels);
        std::vector<mpz_class> x(g.generators());
        for (auto& v : x) v = val(rng);
        GroupElement e = g.from_generators(x);
        // The lift must map back to the same class.
        CHECK(g.eq(g.from_generators(g.to_generators(e)), e));
        // Every relation row must die.
        for (std::size_t r = 0; r < rels.rows(); ++r) {
            std::vector<mpz_class> row(g.generators());
            for (std::size_t c = 0; c < g.generators(); ++c) row[c] = rels.at(r, c);
            CHECK(g.is_zero(g.from_generators(row)));
        }
    }
}

TEST_CASE("l_torsion on Z is trivial") {
    FgAbGroup z = FgAbGroup::from_invariants({}, 1);
    Subgroup t = l_torsion(z, 5);
    CHECK(t.group.is_trivial());
}

TEST_CASE("l_torsion of Z/6 at l=3") {
    FgAbGroup g = FgAbGroup::from_invariants({mpz_class(6)}, 0);
    Subgroup t = l_torsion(g, 3);
    // Enumeration oracle: elements of order dividing 3 in Z/6 are {0, 2, 4}.
    std::set<std::string> expect{"(0)", "(2)", "(4)"};
    REQUIRE(t.group.order() == 3);
    std::set<std::string> got;
    for (const auto& e : t.group.elements()) got.insert(g.str(t.embed(g, e)));
    CHECK(got == expect);
}

TEST_CASE("l_torsion of Z + Z/4 at l=2") {
    FgAbGroup g = FgAbGroup::from_invariants({mpz_class(4)}, 1);
    Subgroup t = l_torsion(g, 2);
    REQUIRE(t.group.order() == 2);
    // Generator embeds as twice the torsion generator.
    GroupElement gen(t.group.coords());
    gen[0] = 1;
    GroupElement im = t.embed(g, gen);
    CHECK(im[0] == 2);
    CHECK(im[1] == 0);
}

TEST_CASE("l_torsion: enumeration oracle on random finite groups") {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> lpick(1, 12);
    for (int iter = 0; iter < 25; ++iter) {
        IntMatrix rels = oracle::random_matrix(rng, 4, -6, 6);
        FgAbGroup g = group_from_relations(rels);
        if (g.order() == 0 || g.order() > 2000) continue;
        long l = lpick(rng);
        Subgroup t = l_torsion(g, l);
        // Oracle: count elements killed by l by direct enumeration.
        std::size_t count = 0;
        for (const auto& e : g.elements())
            if (g.is_zero(g.scale(l, e))) ++count;
        CHECK(t.group.order() == count);
        // Exponent divides l, and embedded generators are killed by l.
        for (const auto& e : t.group.elements())
            CHECK(g.is_zero(g.scale(l, t.embed(g, e))));
    }
}

TEST_CASE("tensor products") {
    FgAbGroup z = FgAbGroup::from_invariants({}, 1);
    FgAbGroup z3 = FgAbGroup::from_invariants({mpz_class(3)}, 0);
    FgAbGroup t1 = tensor(z, z3);
    CHECK(t1.order() == 3);

    FgAbGroup z4 = FgAbGroup::from_invariants({mpz_class(4)}, 0);
    FgAbGroup z6 = FgAbGroup::from_invariants({mpz_class(6)}, 0);
    FgAbGroup t2 = tensor(z4, z6);  // gcd(4,6) = 2
    REQUIRE(t2.torsion().size() == 1);
    CHECK(t2.torsion()[0] == 2);

    FgAbGroup z2f = FgAbGroup::from_invariants({}, 2);
    FgAbGroup z2 = FgAbGroup::from_invariants({mpz_class(2)}, 0);
    FgAbGroup t3 = tensor(z2f, z2);  // (Z/2)^2
    CHECK(t3.rank() == 0);
    REQUIRE(t3.torsion().size() == 2);
    CHECK(t3.torsion()[0] == 2);
    CHECK(t3.torsion()[1] == 2);
}

TEST_CASE("annihilator: zero pairing leaves the whole group") {
    FgAbGroup h = FgAbGroup::from_invariants({mpz_class(4)}, 0);
    FgAbGroup k = FgAbGroup::from_invariants({mpz_class(2)}, 0);
    FgAbGroup n = FgAbGroup::from_invariants({mpz_class(4)}, 0);
    GeneratorPairing p{&h, &k, &n, {{n.zero()}}};
    Subgroup s = annihilator_subgroup(p);
    CHECK(s.group.order() == 4);
}

TEST_CASE("annihilator: nondegenerate pairing on Z/2 x Z/2 is trivial") {
    FgAbGroup h = FgAbGroup::from_invariants({mpz_class(2)}, 0);
    FgAbGroup n = FgAbGroup::from_invariants({mpz_class(2)}, 0);
    GroupElement one(1);
    one[0] = 1;
    GeneratorPairing p{&h, &h, &n, {{one}}};
    Subgroup s = annihilator_subgroup(p);
    CHECK(s.group.is_trivial());
}

TEST_CASE("annihilator: Z/4 x Z/2 -> Z/4 via 2xy") {
    FgAbGroup h = FgAbGroup::from_invariants({mpz_class(4)}, 0);
    FgAbGroup k = FgAbGroup::from_invariants({mpz_class(2)}, 0);
    FgAbGroup n = FgAbGroup::from_invariants({mpz_class(4)}, 0);
    GroupElement two(1);
    two[0] = 2;
    GeneratorPairing p{&h, &k, &n, {{two}}};
    Subgroup s = annihilator_subgroup(p);
    // Enumeration oracle: {x in Z/4 : 2xy = 0 mod 4 for y in {0,1}} = {0,2}.
    std::set<std::string> got;
    for (const auto& e : s.group.elements()) got.insert(h.str(s.embed(h, e)));
    CHECK(got == std::set<std::string>{"(0)", "(2)"});
}

TEST_CASE("annihilator: random pairings match enumeration") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> val(0, 11);
    for (int iter = 0; iter < 20; ++iter) {
        FgAbGroup h = group_from_relations(oracle::random_matrix(rng, 3, -5, 5));
        FgAbGroup k = group_from_relations(oracle::random_matrix(rng, 3, -5, 5));
        if (h.order() == 0 || k.order() == 0) continue;
        if (h.order() > 300 || k.order() > 300) continue;
        FgAbGroup n = FgAbGroup::from_invariants({mpz_class(12)}, 0);
        // Random bilinear pairing: values on generator pairs with valid orders.
        GeneratorPairing p{&h, &k, &n, {}};
        p.values.resize(h.coords());
        bool ok = true;
        for (std::size_t i = 0; i < h.coords(); ++i) {
            p.values[i].resize(k.coords());
            for (std::size_t j = 0; j < k.coords(); ++j) {
                // Value order must divide gcd(order_i, order_j, 12); build one.
                mpz_class oi = i < h.torsion().size() ? h.torsion()[i] : 0;
                mpz_class oj = j < k.torsion().size() ? k.torsion()[j] : 0;
                mpz_class g1;
                mpz_gcd(g1.get_mpz_t(), oi.get_mpz_t(), oj.get_mpz_t());
                mpz_class g2;
                mpz_class twelve = 12;
                mpz_gcd(g2.get_mpz_t(), g1.get_mpz_t(), twelve.get_mpz_t());
                GroupElement v(1);
                if (g2 == 0) {
                    ok = false;  // infinite order generator: skip instance
                    break;
                }
                v[0] = (12 / g2) * val(rng);
                p.values[i][j] = n.reduce(v);
            }
            if (!ok) break;
        }
        if (!ok) continue;
        Subgroup s = annihilator_subgroup(p);
        // Enumeration oracle.
        std::size_t count = 0;
        for (const auto& x : h.elements()) {
            bool annih = true;
            for (const auto& y : k.elements())
                if (!n.is_zero(p.apply(x, y))) {
                    annih = false;
                    break;
                }
            if (annih) ++count;
        }
        CHECK(s.group.order() == count);
        // Every embedded element annihilates.
        for (const auto& e : s.group.elements()) {
            GroupElement x = s.embed(h, e);
            for (const auto& y : k.elements()) CHECK(n.is_zero(p.apply(x, y)));
        }
    }
}

TEST_CASE("subgroup_contains") {
    FgAbGroup g = FgAbGroup::from_invariants({mpz_class(8)}, 0);
    GroupElement two(1);
    two[0] = 2;
    Subgroup s = subgroup_from_generators(g, {two});
    CHECK(s.group.order() == 4);
    GroupElement four(1), three(1);
    four[0] = 4;
    three[0] = 3;
    CHECK(subgroup_contains(g, s, four));
    CHECK_FALSE(subgroup_contains(g, s, three));
}
