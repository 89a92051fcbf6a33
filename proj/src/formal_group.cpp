#include "cmdf/formal_group.hpp"

#include "cmdf/errors.hpp"

#include <algorithm>
#include <vector>

namespace cmdf {

namespace {

// w = -1/y as a power series in t = -x/y: w(t) = t^3 (1 + ...), solved by
// iterating the curve equation w = t^3 + a1 t w + a2 t^2 w + a3 w^2
//                               + a4 t w^2 + a6 w^3.
template <class Ring>
Series<Ring> w_series(const Ring& R, const std::array<typename Ring::Elem, 5>& a,
                      int prec) {
    using S = Series<Ring>;
    S t = S::variable(R, 1, prec);
    S t2 = t * t;
    S t3 = t2 * t;
    S w = t3;
    for (int i = 0; i < prec; ++i) {
        S w2 = w * w;
        w = t3 + (t * w).scaled(a[0]) + (t2 * w).scaled(a[1]) + w2.scaled(a[2]) +
            (t * w2).scaled(a[3]) + (w2 * w).scaled(a[4]);
    }
    return w;
}

// i(t) = t / (-1 + a1 t + a3 w(t)); satisfies F(t, i(t)) = 0.
template <class Ring>
Series<Ring> inversion_series_impl(const Ring& R, const std::array<typename Ring::Elem, 5>& a,
                                   int prec) {
    using S = Series<Ring>;
    S w = w_series(R, a, prec + 3).truncated(prec);
    S t = S::variable(R, 1, prec);
    S den = S::constant(R, 1, prec, R.neg(R.one())) + t.scaled(a[0]) + w.scaled(a[2]);
    return t * den.inverse_unit();
}

// The group law F(z1, z2) from the chord construction on (t, w) coordinates.
template <class Ring>
Series<Ring> group_law_impl(const Ring& R, const std::array<typename Ring::Elem, 5>& a,
                            int prec) {
    using S = Series<Ring>;
    S w = w_series(R, a, prec + 3);
    S z1 = S::variable(R, 2, prec, 0);
    S z2 = S::variable(R, 2, prec, 1);

    // lambda = (w(z2) - w(z1)) / (z2 - z1) = sum_n w_n sum_{i+j=n-1} z1^i z2^j
    S lambda(R, 2, prec);
    for (int n = 3; n <= prec; ++n) {
        auto wn = w.coeff(n);
        if (R.is_zero(wn))
            continue;
        for (int i = 0; i <= n - 1; ++i) {
            int jj = n - 1 - i;
            if (i + jj < prec)
                lambda.add_to_coeff({i, jj, 0}, wn);
        }
    }
    // w(z1) embedded in two variables
    S w1(R, 2, prec);
    for (const auto& [k, v] : w.coefficients())
        if (k[0] < prec)
            w1.add_to_coeff({k[0], 0, 0}, v);
    S nu = w1 - lambda * z1;

    S one = S::constant(R, 2, prec, R.one());
    S lam2 = lambda * lambda;
    S den = one + lambda.scaled(a[1]) + lam2.scaled(a[3]) + (lam2 * lambda).scaled(a[4]);
    // t1 + t2 + t3 = -(a1 L + a3 L^2 + a2 nu + 2 a4 L nu + 3 a6 L^2 nu) / den
    S num = lambda.scaled(a[0]) + lam2.scaled(a[2]) + nu.scaled(a[1]) +
            (lambda * nu).scaled(R.add(a[3], a[3])) +
            (lam2 * nu).scaled(R.add(a[4], R.add(a[4], a[4])));
    S t3 = -z1 - z2 - num * den.inverse_unit();

    S inv = inversion_series_impl(R, a, prec);
    return inv.substituted({t3});
}

std::array<Int, 5> coeffs_of(const Curve& c) {
    return {c.a1(), c.a2(), c.a3(), c.a4(), c.a6()};
}

std::array<std::uint64_t, 5> coeffs_mod(const Curve& c, const SmallModRing& R) {
    return {R.from_int(c.a1()), R.from_int(c.a2()), R.from_int(c.a3()), R.from_int(c.a4()),
            R.from_int(c.a6())};
}

// ---- Laurent series over F_p (dense, machine words) ----------------------
//
// Good-reduction [p] mod p is computed by the chord law on the points
// (x(t), y(t)) = (t/w, -1/w) directly; everything lives in F_p((t)).

struct Fp {
    std::uint64_t p;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
    std::uint64_t inv(std::uint64_t a) const {
        std::uint64_t r = 1, base = a % p, e = p - 2;
        while (e) {
            if (e & 1)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }
};

struct Laurent {
    int val = 0;     // exponent of coeffs[0]
    int absprec = 0; // known modulo t^absprec
    std::vector<std::uint64_t> c; // exponents [val, absprec)

    bool is_zero() const { return c.empty(); }
};

Laurent laurent_normalize(Laurent f) {
    size_t lead = 0;
    while (lead < f.c.size() && f.c[lead] == 0)
        ++lead;
    if (lead == f.c.size()) {
        f.c.clear();
        f.val = f.absprec;
        return f;
    }
    f.c.erase(f.c.begin(), f.c.begin() + static_cast<long>(lead));
    f.val += static_cast<int>(lead);
    return f;
}

Laurent laurent_add(const Fp& F, const Laurent& a, const Laurent& b, bool subtract) {
    Laurent out;
    out.absprec = std::min(a.absprec, b.absprec);
    out.val = std::min(a.is_zero() ? out.absprec : a.val,
                       b.is_zero() ? out.absprec : b.val);
    out.val = std::min(out.val, out.absprec);
    out.c.assign(static_cast<size_t>(out.absprec - out.val), 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        int e = a.val + static_cast<int>(i);
        if (e < out.absprec)
            out.c[static_cast<size_t>(e - out.val)] = a.c[i];
    }
    for (size_t i = 0; i < b.c.size(); ++i) {
        int e = b.val + static_cast<int>(i);
        if (e < out.absprec) {
            auto& slot = out.c[static_cast<size_t>(e - out.val)];
            slot = subtract ? F.sub(slot, b.c[i]) : F.add(slot, b.c[i]);
        }
    }
    return laurent_normalize(out);
}

Laurent laurent_mul(const Fp& F, const Laurent& a, const Laurent& b) {
    Laurent out;
    if (a.is_zero() || b.is_zero()) {
        out.absprec = std::min(a.absprec + (b.is_zero() ? b.absprec : b.val),
                               b.absprec + (a.is_zero() ? a.absprec : a.val));
        out.val = out.absprec;
        return out;
    }
    out.val = a.val + b.val;
    out.absprec = std::min(a.absprec + b.val, b.absprec + a.val);
    out.c.assign(static_cast<size_t>(out.absprec - out.val), 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0)
            continue;
        int ea = a.val + static_cast<int>(i);
        for (size_t j = 0; j < b.c.size(); ++j) {
            int e = ea + b.val + static_cast<int>(j);
            if (e >= out.absprec)
                break;
            auto& slot = out.c[static_cast<size_t>(e - out.val)];
            slot = (slot + a.c[i] * b.c[j]) % F.p;
        }
    }
    return laurent_normalize(out);
}

Laurent laurent_inv(const Fp& F, const Laurent& a) {
    require_invariant(!a.is_zero(), "division by zero Laurent series");
    int L = a.absprec - a.val; // relative precision
    std::vector<std::uint64_t> u = a.c;
    std::vector<std::uint64_t> q(static_cast<size_t>(L), 0);
    std::uint64_t u0inv = F.inv(u[0]);
    for (int k = 0; k < L; ++k) {
        std::uint64_t acc = (k == 0) ? 1 : 0;
        for (int i = 1; i <= k; ++i)
            if (static_cast<size_t>(i) < u.size())
                acc = F.sub(acc, F.mul(u[static_cast<size_t>(i)],
                                       q[static_cast<size_t>(k - i)]));
        q[static_cast<size_t>(k)] = F.mul(acc, u0inv);
    }
    Laurent out;
    out.val = -a.val;
    out.absprec = -a.val + L;
    out.c = std::move(q);
    return laurent_normalize(out);
}

Laurent laurent_scale(const Fp& F, const Laurent& a, std::uint64_t k) {
    Laurent out = a;
    for (auto& x : out.c)
        x = F.mul(x, k);
    return laurent_normalize(out);
}

struct FpPoint {
    Laurent x, y;
};

// chord/tangent sum on y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_p((t))
FpPoint point_add(const Fp& F, const std::array<std::uint64_t, 5>& a, const FpPoint& P,
                  const FpPoint& Q, bool tangent) {
    Laurent lambda;
    if (tangent) {
        // (3x^2 + 2 a2 x + a4 - a1 y) / (2y + a1 x + a3)
        Laurent x2 = laurent_mul(F, P.x, P.x);
        Laurent num = laurent_add(F, laurent_scale(F, x2, 3 % F.p),
                                  laurent_scale(F, P.x, (2 * a[1]) % F.p), false);
        num.absprec = std::min(num.absprec, x2.absprec);
        Laurent a4c;
        a4c.val = 0;
        a4c.absprec = num.absprec;
        a4c.c.assign(static_cast<size_t>(a4c.absprec), 0);
        if (!a4c.c.empty())
            a4c.c[0] = a[3] % F.p;
        a4c = laurent_normalize(a4c);
        num = laurent_add(F, num, a4c, false);
        num = laurent_add(F, num, laurent_scale(F, P.y, a[0]), true);
        Laurent den = laurent_add(F, laurent_scale(F, P.y, 2 % F.p),
                                  laurent_scale(F, P.x, a[0]), false);
        Laurent a3c;
        a3c.val = 0;
        a3c.absprec = den.absprec;
        a3c.c.assign(static_cast<size_t>(a3c.absprec), 0);
        if (!a3c.c.empty())
            a3c.c[0] = a[2] % F.p;
        a3c = laurent_normalize(a3c);
        den = laurent_add(F, den, a3c, false);
        lambda = laurent_mul(F, num, laurent_inv(F, den));
    } else {
        Laurent num = laurent_add(F, Q.y, P.y, true);
        Laurent den = laurent_add(F, Q.x, P.x, true);
        lambda = laurent_mul(F, num, laurent_inv(F, den));
    }
    Laurent lam2 = laurent_mul(F, lambda, lambda);
    Laurent x3 = laurent_add(F, lam2, laurent_scale(F, lambda, a[0]), false);
    x3 = laurent_add(F, x3, P.x, true);
    x3 = laurent_add(F, x3, Q.x, true);
    // constant -a2
    Laurent a2c;
    a2c.val = 0;
    a2c.absprec = x3.absprec;
    a2c.c.assign(static_cast<size_t>(std::max(a2c.absprec, 0)), 0);
    if (!a2c.c.empty())
        a2c.c[0] = a[1] % F.p;
    a2c = laurent_normalize(a2c);
    x3 = laurent_add(F, x3, a2c, true);
    // y3 = -(lambda (x3 - x1) + y1) - a1 x3 - a3
    Laurent y3 = laurent_mul(F, lambda, laurent_add(F, x3, P.x, true));
    y3 = laurent_add(F, y3, P.y, false);
    y3 = laurent_scale(F, y3, F.p - 1);
    y3 = laurent_add(F, y3, laurent_scale(F, x3, a[0]), true);
    Laurent a3c;
    a3c.val = 0;
    a3c.absprec = y3.absprec;
    a3c.c.assign(static_cast<size_t>(std::max(a3c.absprec, 0)), 0);
    if (!a3c.c.empty())
        a3c.c[0] = a[2] % F.p;
    a3c = laurent_normalize(a3c);
    y3 = laurent_add(F, y3, a3c, true);
    return {x3, y3};
}

// [p](t) mod p by chord iteration, for odd p of good reduction.
std::vector<std::uint64_t> multiplication_by_p_mod_p(const Curve& c, long p, int prec) {
    Fp F{static_cast<std::uint64_t>(p)};
    SmallModRing R{static_cast<std::uint64_t>(p)};
    auto a = coeffs_mod(c, R);
    int W = 2 * prec + 8 * static_cast<int>(p) + 16;
    ModSeries w = w_series(R, a, W);
    Laurent wl;
    wl.val = 3;
    wl.absprec = W;
    wl.c.assign(static_cast<size_t>(W - 3), 0);
    for (const auto& [k, v] : w.coefficients())
        wl.c[static_cast<size_t>(k[0] - 3)] = v;
    wl = laurent_normalize(wl);
    Laurent winv = laurent_inv(F, wl);
    Laurent t;
    t.val = 1;
    t.absprec = W;
    t.c.assign(static_cast<size_t>(W - 1), 0);
    t.c[0] = 1;
    FpPoint P1{laurent_mul(F, t, winv), laurent_scale(F, winv, F.p - 1)};
    FpPoint Pm = point_add(F, a, P1, P1, true);
    for (long m = 3; m <= p; ++m)
        Pm = point_add(F, a, Pm, P1, false);
    // t-coordinate -x/y of [p]P
    Laurent tp = laurent_mul(F, laurent_scale(F, Pm.x, F.p - 1), laurent_inv(F, Pm.y));
    require_invariant(tp.absprec >= prec, "precision exhausted in [p] chord iteration");
    require_invariant(tp.is_zero() || tp.val >= 1, "[p](t) is not a power series");
    std::vector<std::uint64_t> out(static_cast<size_t>(prec), 0);
    for (size_t i = 0; i < tp.c.size(); ++i) {
        int e = tp.val + static_cast<int>(i);
        if (e < prec)
            out[static_cast<size_t>(e)] = tp.c[i];
    }
    return out;
}

} // namespace

IntSeries inversion_series(const Curve& c, int prec) {
    check(prec >= 2, "precision must be at least 2");
    IntRing R;
    std::array<Int, 5> a = coeffs_of(c);
    return inversion_series_impl(R, a, prec);
}

FormalGroupLaw group_law(const Curve& c, int prec) {
    check(prec >= 2, "precision must be at least 2");
    IntRing R;
    IntSeries F = group_law_impl(R, coeffs_of(c), prec);
    // leading form z1 + z2; symmetry; F(z,0) = z
    require_invariant(F.coeff(1, 0) == 1 && F.coeff(0, 1) == 1,
                      "group law does not start with z1 + z2");
    for (const auto& [k, v] : F.coefficients()) {
        require_invariant(F.coeff(k[1], k[0]) == v, "group law is not symmetric");
        if (k[1] == 0)
            require_invariant(k[0] == 1 && v == 1, "F(z,0) != z");
    }
    return FormalGroupLaw{c, prec, F};
}

IntSeries multiplication_by_m(const FormalGroupLaw& fg, long m) {
    IntRing R;
    int prec = fg.precision;
    IntSeries t = IntSeries::variable(R, 1, prec);
    if (m == 0)
        return IntSeries(R, 1, prec);
    long k = m < 0 ? -m : m;
    IntSeries acc = t;
    for (long i = 2; i <= k; ++i)
        acc = fg.F.substituted({acc, t});
    if (m < 0)
        acc = inversion_series(fg.curve, prec).substituted({acc});
    require_invariant(acc.coeff(1) == m, "[m]'(0) != m");
    return acc;
}

HeightResult reduced_height(const Curve& c, long p, int prec) {
    check(p >= 2 && is_prime(Int(p)), "height needs a prime");
    check(prec > p * p, "insufficient precision: need prec > p^2");
    Curve m = minimal_model(c);
    check(mod_floor(m.disc(), Int(p)) != 0, "bad reduction at p");

    std::vector<std::uint64_t> mp;
    if (p == 2) {
        SmallModRing R{2};
        ModSeries F = group_law_impl(R, coeffs_mod(m, R), prec);
        ModSeries t = ModSeries::variable(R, 1, prec);
        ModSeries two = F.substituted({t, t});
        mp.assign(static_cast<size_t>(prec), 0);
        for (const auto& [k, v] : two.coefficients())
            mp[static_cast<size_t>(k[0])] = v;
    } else {
        mp = multiplication_by_p_mod_p(m, p, prec);
    }

    Int witness(-1);
    bool all_p2 = true;
    for (size_t e = 0; e < mp.size(); ++e) {
        if (mp[e] == 0)
            continue;
        if (witness < 0)
            witness = static_cast<long>(e);
        require_invariant(e % static_cast<size_t>(p) == 0,
                          "[p] mod p has an exponent not divisible by p");
        if (e % static_cast<size_t>(p * p) != 0)
            all_p2 = false;
    }
    require_invariant(witness > 0, "[p] vanished mod p to working precision");
    int h = all_p2 ? 2 : 1;
    require_invariant(witness == int_pow(Int(p), static_cast<unsigned long>(h)),
                      "height witness is not p^h");
    // cross-check against the trace criterion
    long ap = trace_of_frobenius(m, p);
    require_invariant((ap % p == 0) == (h == 2), "height disagrees with a_p mod p");
    return HeightResult{p, h, witness};
}

Rat torsion_valuation_bound(const Int& vp, const Int& p, int h, int n) {
    check(n >= 1, "n must be >= 1");
    check(vp >= 1, "v(p) must be >= 1");
    check(h == 1 || h == 2, "height must be 1 or 2");
    check(is_prime(p), "p must be prime");
    Int ph = int_pow(p, static_cast<unsigned long>(h));
    Int den = int_pow(ph, static_cast<unsigned long>(n - 1)) * (ph - 1);
    Rat out(vp, den);
    out.canonicalize();
    return out;
}

} // namespace cmdf
