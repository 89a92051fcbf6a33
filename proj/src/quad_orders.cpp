#include "cmdf/quad_orders.hpp"

#include "cmdf/errors.hpp"

#include <set>

namespace cmdf {

Order order_from_discriminant(const Int& disc) {
    check(disc < 0, "discriminant of an imaginary quadratic order must be negative");
    Int r = mod_floor(disc, 4);
    check(r == 0 || r == 1, "discriminant must be 0 or 1 mod 4");
    // split off the square part consistent with fundamentality
    Int d0 = squarefree_kernel(disc);
    Int f2 = disc / d0; // positive perfect square
    Int f = isqrt(f2);
    Int dK;
    if (mod_floor(d0, 4) == 1) {
        dK = d0;
    } else {
        dK = 4 * d0;
        require_invariant(mpz_even_p(f.get_mpz_t()), "square part must be even here");
        f /= 2;
    }
    require_invariant(f * f * dK == disc, "discriminant decomposition failed");
    require_invariant(is_fundamental_discriminant(dK), "non-fundamental field discriminant");
    Order o;
    o.disc = disc;
    o.fund_disc = dK;
    o.conductor = f;
    o.unit_order = disc == -3 ? 6 : (disc == -4 ? 4 : 2);
    return o;
}

ClassGroupData class_number_by_forms(const Order& order) {
    const Int& D = order.disc;
    ClassGroupData out;
    out.h = 0;
    Int bound = isqrt(-D / 3); // |b| <= a <= sqrt(|D|/3)
    for (Int a = 1; a <= bound; ++a) {
        for (Int b = -a; b <= a; ++b) {
            Int num = b * b - D;
            if (mod_floor(num, 4 * a) != 0)
                continue;
            Int c = num / (4 * a);
            if (c < a)
                continue;
            Int g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
            if (g != 1)
                continue;
            if (b < 0 && (b == -a || a == c))
                continue; // b >= 0 representative of the pair
            out.forms.push_back({a, b, c});
        }
    }
    out.h = static_cast<long>(out.forms.size());
    return out;
}

Int class_number_by_formula(const Order& order) {
    Order maximal = order_from_discriminant(order.fund_disc);
    Int hK = class_number_by_forms(maximal).h;
    if (order.conductor == 1)
        return hK;
    Int num = hK * order.conductor;
    Int den(1);
    for (const Int& p : prime_divisors(order.conductor)) {
        num *= p - kronecker(order.fund_disc, p);
        den *= p;
    }
    den *= maximal.unit_order / order.unit_order;
    require_invariant(num % den == 0, "class number formula did not give an integer");
    return num / den;
}

Int residue_unit_count(const Order& order, const Int& N) {
    check(N >= 1, "modulus must be positive");
    if (N == 1)
        return 1;
    Int count(1);
    for (const auto& pe : factorize(N)) {
        const Int& p = pe.prime;
        int chi = kronecker(order.disc, p);
        Int local = int_pow(p, 2 * (pe.exponent - 1)) * (p - chi) * (p - 1);
        count *= local;
    }
    return count;
}

std::vector<std::pair<Int, Int>> unit_coordinates(const Order& order) {
    // omega = (disc + sqrt(disc))/2. For disc -4: i = omega + 2.
    // For disc -3: zeta_3 = omega + 1, zeta_3^2 = -omega - 2.
    std::vector<std::pair<Int, Int>> units = {{1, 0}, {-1, 0}};
    if (order.unit_order == 4) {
        units.push_back({2, 1});
        units.push_back({-2, -1});
    } else if (order.unit_order == 6) {
        units.push_back({1, 1});
        units.push_back({-1, -1});
        units.push_back({-2, -1});
        units.push_back({2, 1});
    }
    return units;
}

Int unit_image_order(const Order& order, const Int& N) {
    check(N >= 1, "modulus must be positive");
    std::set<std::pair<Int, Int>> image;
    for (const auto& [u, v] : unit_coordinates(order))
        image.insert({mod_floor(u, N), mod_floor(v, N)});
    return static_cast<long>(image.size());
}

RayClassDegree ray_class_degree(const Order& order, const Int& N) {
    Int total = residue_unit_count(order, N);
    Int img = unit_image_order(order, N);
    require_invariant(total % img == 0, "unit image order does not divide the unit count");
    RayClassDegree d;
    d.over_ring_class = total / img;
    d.over_K = d.over_ring_class * class_number_by_forms(order).h;
    return d;
}

} // namespace cmdf
