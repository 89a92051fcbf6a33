#include "cmdf/entangle.hpp"

#include "cmdf/errors.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cmdf {

int n_of_order(const Order& order) {
    check(order.disc < -4, "n(O) is defined for discriminants < -4");
    check(class_number_by_forms(order).h == 1, "n(O) is defined for class number one");
    return (order.disc == -16 || order.disc == -8) ? 4 : 2;
}

std::pair<Int, Int> fundamental_discriminant_split(const Int& Delta) {
    check(Delta == 1 || is_fundamental_discriminant(Delta),
          "input is not a fundamental discriminant");
    if (mpz_odd_p(Delta.get_mpz_t()))
        return {Int(1), Delta};
    Int m = Delta / 4;
    if (mod_floor(m, 4) == 3)
        return {Int(-4), -m};
    // m = 2 mod 4
    Int mp = m / 2; // odd squarefree
    if (mod_floor(mp, 4) == 1)
        return {Int(8), mp};
    return {Int(-8), -mp};
}

TwistCase twist_case(const Int& Delta, const Int& p, const Int& fE) {
    check(is_prime(p), "special prime must be prime");
    if (Delta == -4 || Delta == 8 || Delta == -8) {
        if (p == 2)
            return {TwistTag::T4, false};
        if (mod_floor(p * fE, 2) != 0)
            return {TwistTag::T3, true};
        throw domain_error("no twist case applies: even Delta with 2 | p*fE, p != 2");
    }
    Int q = abs(Delta);
    if (is_prime(q) && q >= 3) {
        Int expected = (mod_floor(q, 4) == 1) ? q : -q; // (-1)^((q-1)/2) q
        if (Delta == expected) {
            if (q == p)
                return {TwistTag::T2, false};
            if (mod_floor(p * fE, q) != 0)
                return {TwistTag::T1, true};
            throw domain_error("no twist case applies: q divides p*fE");
        }
    }
    throw domain_error("no twist case applies: Delta is not of a reduced form");
}

std::vector<Int> bad_prime_set(const Curve& c, const Order& order) {
    Int cond = conductor(c).conductor;
    Int B = order.conductor * abs(order.fund_disc) * cond;
    return prime_divisors(B);
}

Int galois_order(const Order& order, const Int& q, int m, bool minimal) {
    check(is_prime(q), "q must be prime");
    check(m >= 1, "level must be >= 1");
    if (minimal) {
        int threshold = std::max(n_of_order(order) - 1, 1);
        check(m >= threshold,
              "minimal division fields need m >= n(O) - 1 = " + std::to_string(threshold));
    }
    Int total = residue_unit_count(order, int_pow(q, static_cast<unsigned long>(m)));
    if (!minimal)
        return total;
    require_invariant(total % 2 == 0, "unit count is odd; cannot halve");
    return total / 2;
}

Int hecke_conductor_norm(const Curve& c, const Order& order) {
    Int cond = conductor(c).conductor;
    Int dK = abs(order.fund_disc);
    check(cond % dK == 0,
          "conductor is not divisible by |Delta_K|: not CM by this order");
    return cond / dK;
}

namespace {

Int special_prime_of(const Order& order) {
    // the unique prime ramified in Q in K = Q(sqrt(Delta_K))
    std::vector<Int> ps = prime_divisors(order.fund_disc);
    require_invariant(ps.size() == 1, "field discriminant is not a prime power");
    return ps[0];
}

std::string sqrt_expr(const Int& d) {
    std::ostringstream os;
    os << "sqrt(" << d << ")";
    return os.str();
}

} // namespace

EntanglementReport classify(const Curve& input, const Registry& registry) {
    auto order_opt = registry.lookup_by_j(input.j());
    check(order_opt.has_value(),
          "j(E) is not a class-number-one CM invariant; classification needs "
          "Pic(O) = 1");
    Order order = *order_opt;
    check(order.disc < -4,
          "orders Z[i] and Z[zeta3] admit quartic/sextic twists and are excluded");

    EntanglementReport rep(order, input, minimal_model(input));
    rep.n_of_order = n_of_order(order);
    rep.special_prime = special_prime_of(order);
    rep.conductor = conductor(rep.curve).conductor;
    rep.minimality_threshold = std::max(rep.n_of_order - 1, 1);

    auto [minimal, matched] = registry.is_twist_minimal(rep.curve);
    rep.twist_minimal = minimal;

    std::vector<Int> bad = bad_prime_set(rep.curve, order);
    rep.bad_primes = bad;

    const Int& p = rep.special_prime;
    if (minimal) {
        rep.base_curve = matched;
        rep.delta_r = 1;
        rep.disjoint_over_K = true;
        for (const Int& q : bad) {
            PrimeDescriptor d;
            d.q = q;
            if (q == p) {
                d.level = rep.minimality_threshold;
                d.maximal = false;
                d.minimal_field = true;
                d.group_order = galois_order(order, q, d.level, true);
            } else {
                // only the Z[sqrt(-3)] conductor keeps an extra good prime here
                d.level = 1;
                d.maximal = true;
                d.minimal_field = false;
                d.group_order = galois_order(order, q, 1, false);
            }
            rep.per_prime.push_back(std::move(d));
        }
        return rep;
    }

    // proper twist: find the unique base curve A_{r0} and fundamental
    // discriminant Delta_r coprime to p with E = A_{r0}^(Delta_r)
    std::optional<Curve> base;
    std::optional<Int> delta_r;
    for (const Curve& r : registry.twist_minimal_curves(order)) {
        auto d = twist_factor(r, rep.curve);
        if (!d)
            continue;
        Int D = fundamental_discriminant_of(*d);
        if (mod_floor(D, p) == 0)
            continue;
        check(!delta_r.has_value(),
              "twist normalisation is not unique; registry data inconsistent");
        base = r;
        delta_r = D;
    }
    check(delta_r.has_value(), "no twist representation with Delta_r coprime to p");
    rep.base_curve = base;
    rep.delta_r = *delta_r;
    rep.disjoint_over_K = false;

    std::vector<Int> delta_primes = prime_divisors(*delta_r);
    for (const Int& q : bad) {
        PrimeDescriptor d;
        d.q = q;
        d.level = 1;
        d.maximal = true;
        d.minimal_field = false;
        d.group_order = galois_order(order, q, 1, false);
        if (q == p) {
            d.entangled_with = delta_primes;
        } else if (mod_floor(*delta_r, q) == 0) {
            d.entangled_with.push_back(p);
            for (const Int& qq : delta_primes)
                if (qq != q)
                    d.entangled_with.push_back(qq);
        }
        rep.per_prime.push_back(std::move(d));
    }

    EntanglementRelation rel;
    rel.p = p;
    rel.delta_r = *delta_r;
    rel.threshold_m = rep.minimality_threshold;
    {
        std::ostringstream os;
        os << "H_{" << p << "^m,O}(" << sqrt_expr(*delta_r) << ")";
        rel.division_field = os.str();
        std::ostringstream os2;
        os2 << "K(" << sqrt_expr(*delta_r) << ")";
        rel.intersection = os2.str();
    }
    rep.relation = rel;
    return rep;
}

} // namespace cmdf
