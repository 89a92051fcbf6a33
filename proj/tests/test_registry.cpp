#include "cmdf/cm_registry.hpp"
#include "cmdf/errors.hpp"

#include <doctest.h>

using namespace cmdf;

TEST_CASE("registry loads and self-checks") {
    Registry reg = Registry::load_default();
    CHECK(reg.total_count() == 30);
    CHECK(reg.classifiable_count() == 26);
    CHECK(reg.entries().size() == 13);
    for (const auto& e : reg.entries()) {
        size_t expected = (e.order.disc == -8 || e.order.disc == -16) ? 4 : 2;
        CHECK(e.curves.size() == expected);
        for (const auto& rc : e.curves) {
            CHECK(rc.curve.j() == e.j);
            CHECK(conductor(rc.curve).conductor == rc.conductor);
        }
    }
}

TEST_CASE("lookup by j") {
    Registry reg = Registry::load_default();
    auto o = reg.lookup_by_j(Rat(-3375));
    REQUIRE(o.has_value());
    CHECK(o->disc == -7);

    o = reg.lookup_by_j(Rat(287496));
    REQUIRE(o.has_value());
    CHECK(o->disc == -16);

    CHECK(!reg.lookup_by_j(Rat(5)).has_value());

    // round trip through every stored curve
    for (const auto& e : reg.entries())
        for (const auto& rc : e.curves) {
            auto back = reg.lookup_by_j(rc.curve.j());
            REQUIRE(back.has_value());
            CHECK(back->disc == e.order.disc);
        }
}

TEST_CASE("twist-minimal curve lists") {
    Registry reg = Registry::load_default();
    CHECK(reg.twist_minimal_curves(order_from_discriminant(Int(-8))).size() == 4);
    CHECK(reg.twist_minimal_curves(order_from_discriminant(Int(-7))).size() == 2);
    auto m16 = reg.twist_minimal_curves(order_from_discriminant(Int(-16)));
    REQUIRE(m16.size() == 4);
    // pristine pair sits after the conductor-32 pair
    CHECK(m16[2] == Curve(0, 0, 0, -44, -112));
    CHECK(m16[3] == Curve(0, 0, 0, -44, 112));
    CHECK_THROWS_AS(reg.twist_minimal_curves(order_from_discriminant(Int(-20))),
                    domain_error);
}

TEST_CASE("two-curve rows are twists by the field discriminant") {
    Registry reg = Registry::load_default();
    // dK = -3, f = 2 row: twist by -3
    const RegistryEntry* e12 = reg.entry_by_disc(Int(-12));
    REQUIRE(e12 != nullptr);
    CHECK(twist_factor(e12->curves[0].curve, e12->curves[1].curve) == Int(-3));
    // dK = -7, f = 1 row: twist by -7
    const RegistryEntry* e7 = reg.entry_by_disc(Int(-7));
    REQUIRE(e7 != nullptr);
    CHECK(twist_factor(e7->curves[0].curve, e7->curves[1].curve) == Int(-7));
}

TEST_CASE("is_twist_minimal") {
    Registry reg = Registry::load_default();
    Curve k49(1, -1, 0, -2, -1);

    auto [tm, match] = reg.is_twist_minimal(k49);
    CHECK(tm);
    REQUIRE(match.has_value());
    CHECK(*match == k49);

    auto [tm5, match5] = reg.is_twist_minimal(quadratic_twist(k49, Int(5)));
    CHECK(!tm5);
    CHECK(!match5.has_value());

    // twisting by -7 generates K, so the result is K-isomorphic to a registry curve
    auto [tm7, match7] = reg.is_twist_minimal(quadratic_twist(k49, Int(-7)));
    CHECK(tm7);

    // pristine curves are twist minimal; their twist by 5 is not
    Curve pristine(0, 0, 0, -44, -112);
    CHECK(reg.is_twist_minimal(pristine).first);
    CHECK(!reg.is_twist_minimal(quadratic_twist(pristine, Int(5))).first);
    // ... but the twist by -1 is K-trivial for K = Q(i)
    CHECK(reg.is_twist_minimal(quadratic_twist(pristine, Int(-1))).first);

    CHECK_THROWS_AS(reg.is_twist_minimal(Curve(0, 0, 0, -1, 0)), domain_error);
    CHECK_THROWS_AS(reg.is_twist_minimal(Curve(0, 0, 1, 0, 1)), domain_error);
}

TEST_CASE("j is invariant under twists of every registry curve") {
    Registry reg = Registry::load_default();
    for (const auto& e : reg.entries())
        for (const auto& rc : e.curves)
            for (long d : {-1L, 2L, -2L, 3L, -3L, 5L, -7L})
                CHECK(quadratic_twist(rc.curve, Int(d)).j() == e.j);
}

TEST_CASE("supersingular reduction exactly at inert primes, p < 200") {
    Registry reg = Registry::load_default();
    for (const auto& e : reg.entries())
        for (const auto& rc : e.curves)
            for (long p = 2; p < 200; ++p) {
                if (!is_prime(Int(p)) || mod_floor(rc.conductor, Int(p)) == 0)
                    continue;
                long ap = trace_of_frobenius(rc.curve, p);
                CHECK((ap % p == 0) == (kronecker(e.order.fund_disc, Int(p)) == -1));
            }
}

TEST_CASE("corrupted registry data is rejected") {
    CHECK_THROWS_AS(Registry::parse("-7 1 -3375 49 [1,-1,0,-2,-1]\n"), domain_error);
    CHECK_THROWS_AS(Registry::parse("-7 1 -3000 49 [1,-1,0,-2,-1]\n"), domain_error);
    CHECK_THROWS_AS(Registry::parse("-7 1 -3375 50 [1,-1,0,-2,-1]\n"), domain_error);
}
