#include "cmdf/errors.hpp"
#include "cmdf/frobenius.hpp"

#include <doctest.h>

using namespace cmdf;

TEST_CASE("residue ring arithmetic") {
    Order o7 = order_from_discriminant(Int(-7));
    ResidueRing R(o7, Int(7));
    // omega^2 = -7 omega - 14, norm(u + v omega) = u^2 - 7uv + 14v^2
    ResidueElement w = R.reduce(0, 1);
    ResidueElement w2 = R.mul(w, w);
    CHECK(w2 == R.reduce(-14, -7));
    CHECK(R.norm(R.reduce(1, 0)) == 1);
    CHECK(R.norm(R.reduce(4, 1)) == mod_floor(Int(16 - 28 + 14), Int(7)));
    ResidueElement x = R.reduce(3, 2);
    REQUIRE(R.is_unit(x));
    CHECK(R.mul(x, R.inverse(x)) == R.one());
    CHECK(R.mul(x, R.conj(x)) == R.reduce(R.norm(x), 0));
}

TEST_CASE("brute-force unit counts") {
    CHECK(residue_units_bruteforce(order_from_discriminant(Int(-7)), Int(3)).count == 8);
    CHECK(residue_units_bruteforce(order_from_discriminant(Int(-16)), Int(2)).count == 2);
    CHECK(residue_units_bruteforce(order_from_discriminant(Int(-8)), Int(1)).count == 1);
    CHECK_THROWS_AS(residue_units_bruteforce(order_from_discriminant(Int(-7)), Int(300)),
                    domain_error);
}

TEST_CASE("frobenius elements of the conductor-49 curve") {
    Curve c(1, -1, 0, -2, -1);
    Order o = order_from_discriminant(Int(-7));

    FrobeniusPair f2 = frobenius_element(c, o, 2, Int(7));
    CHECK(f2.a_q == 1);
    CHECK(f2.b == 1);
    CHECK(f2.pi == ResidueElement{Int(4), Int(1)}); // (1 + sqrt(-7))/2 = 4 + omega
    ResidueRing R(o, Int(7));
    CHECK(R.norm(f2.pi) == 2);
    CHECK(R.mul(f2.pi, f2.pi_bar) == R.reduce(2, 0));

    FrobeniusPair f11 = frobenius_element(c, o, 11, Int(7));
    CHECK((f11.a_q == 4 || f11.a_q == -4));
    CHECK(f11.b == 2);
    CHECK(R.norm(f11.pi) == 4);

    // inert prime rejected
    CHECK_THROWS_AS(frobenius_element(c, o, 3, Int(7)), domain_error);
    // bad reduction rejected (7 | 49, and 7 is ramified anyway)
    CHECK_THROWS_AS(frobenius_element(c, o, 7, Int(5)), domain_error);
    // q must be coprime to N
    CHECK_THROWS_AS(frobenius_element(c, o, 11, Int(11)), domain_error);
}

TEST_CASE("norms of frobenius elements match q") {
    Curve c(0, 0, 1, -38, 90); // CM by -19
    Order o = order_from_discriminant(Int(-19));
    for (long q = 2; q < 300; ++q) {
        if (!is_prime(Int(q)) || kronecker(o.disc, Int(q)) != 1)
            continue;
        if (mod_floor(Int(361), Int(q)) == 0 || mod_floor(Int(15), Int(q)) == 0)
            continue;
        FrobeniusPair f = frobenius_element(c, o, q, Int(15));
        ResidueRing R(o, Int(15));
        CHECK(R.norm(f.pi) == mod_floor(Int(q), Int(15)));
        CHECK(R.norm(f.pi_bar) == mod_floor(Int(q), Int(15)));
    }
}

TEST_CASE("image subgroups of the conductor-49 curve") {
    Curve c(1, -1, 0, -2, -1);
    Order o = order_from_discriminant(Int(-7));

    ImageSubgroup img = image_subgroup(c, o, Int(7), 1000);
    CHECK(img.order == 21);
    CHECK(img.full_order == 42);
    CHECK(!img.contains_minus_one);
    CHECK(img.stabilized);
    CHECK(!img.full);

    img = image_subgroup(c, o, Int(3), 1000);
    CHECK(img.order == 8);
    CHECK(img.full);
    CHECK(img.contains_minus_one);

    Curve tw5 = quadratic_twist(c, Int(5));
    img = image_subgroup(tw5, o, Int(7), 1000);
    CHECK(img.order == 42);
    CHECK(img.full);
    CHECK(img.contains_minus_one);
}

TEST_CASE("the Z[sqrt(-3)] minimal curves have index-2 image at 3 but not at 2") {
    Curve c(0, 0, 0, -15, 22);
    Order o = order_from_discriminant(Int(-12));

    ImageSubgroup at3 = image_subgroup(c, o, Int(3), 2000);
    CHECK(at3.order == 3); // K(E[3]) is the degree-3 ray class field
    CHECK(at3.full_order == 6);
    CHECK(!at3.contains_minus_one);
    CHECK(at3.stabilized);

    ImageSubgroup at2 = image_subgroup(c, o, Int(2), 2000);
    CHECK(at2.full);
    CHECK(at2.order == 2);

    // twisting by -1 restores surjectivity at 3
    ImageSubgroup tw3 = image_subgroup(quadratic_twist(c, Int(-1)), o, Int(3), 2000);
    CHECK(tw3.full);
    CHECK(tw3.order == 6);
}

TEST_CASE("composite moduli see the diagonal entanglement") {
    Curve c(1, -1, 0, -2, -1);
    Order o = order_from_discriminant(Int(-7));

    // away from 7 the divisions fields are disjoint and maximal: full product
    ImageSubgroup at60 = image_subgroup(c, o, Int(60), 20000);
    CHECK(at60.full);
    CHECK(at60.order == 768);

    // the twist by 5 couples the 5- and 7-towers: one global index 2
    Curve tw = quadratic_twist(c, Int(5));
    ImageSubgroup at35 = image_subgroup(tw, o, Int(35), 20000);
    CHECK(at35.order == 504);
    CHECK(at35.full_order == 1008);
    CHECK(!at35.contains_minus_one);
    CHECK(at35.stabilized);
}

TEST_CASE("subgroup order always divides the full unit count") {
    Curve c(0, -1, 0, -3, -1); // CM by -8
    Order o = order_from_discriminant(Int(-8));
    for (long N : {3L, 5L, 8L, 9L}) {
        ImageSubgroup img = image_subgroup(c, o, Int(N), 2000);
        CHECK(mod_floor(img.full_order, img.order) == 0);
        Int idx = img.full_order / img.order;
        CHECK((idx == 1 || idx == 2));
        CHECK(img.contains_minus_one == (idx == 1));
    }
}
