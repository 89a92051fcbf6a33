// Tate's algorithm at a rational prime, run in full at every p including
// 2 and 3 (no Ogg shortcut; the interesting conductors here sit at 2, 3, 7).

#include "cmdf/errors.hpp"
#include "cmdf/weierstrass.hpp"

#include <vector>

namespace cmdf {

namespace {

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    int ok = mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    require_invariant(ok != 0, "non-invertible residue in Tate's algorithm");
    return r;
}

long val(const Int& n, const Int& p) { return n == 0 ? 1000000 : valuation(n, p); }

// polynomials over F_p, coefficients ascending, degree <= 3
using Poly = std::vector<Int>;

void normalize(Poly& f, const Int& p) {
    for (auto& c : f)
        c = mod_floor(c, p);
    while (!f.empty() && f.back() == 0)
        f.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, const Int& p) {
    normalize(a, p);
    Int lead_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        Int q = mod_floor(a.back() * lead_inv, p);
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_floor(a[shift + i] - q * b[i], p);
        normalize(a, p);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, const Int& p) {
    normalize(a, p);
    normalize(b, p);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = b;
        b = r;
    }
    return a;
}

// x-coordinate of the singular point of the reduction mod p (p odd, p | disc),
// via the completed square g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6.
Int singular_x_odd(const Curve& c, const Int& p) {
    Poly g = {c.b6(), 2 * c.b4(), c.b2(), Int(4)};
    Poly gp = {2 * c.b4(), 2 * c.b2(), Int(12)};
    Poly d = poly_gcd(g, gp, p);
    if (d.size() == 2) // one double root
        return mod_floor(-d[0] * inv_mod(d[1], p), p);
    if (d.size() >= 3) // triple root
        return mod_floor(-c.b2() * inv_mod(Int(12), p), p);
    throw internal_error("no singular point found for p | disc");
}

Curve move_singular_point_to_origin(const Curve& c, const Int& p) {
    Int r, t;
    if (p <= 3) {
        long pl = static_cast<long>(p.get_si());
        auto red = [&](const Int& v) {
            return static_cast<long>(
                mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(pl)));
        };
        long a1 = red(c.a1()), a2 = red(c.a2()), a3 = red(c.a3()), a4 = red(c.a4()),
             a6 = red(c.a6());
        bool found = false;
        for (long x = 0; x < pl && !found; ++x)
            for (long y = 0; y < pl && !found; ++y) {
                long f = (y * y + a1 * x * y + a3 * y - x * x * x - a2 * x * x - a4 * x -
                          a6) % pl;
                long fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % pl;
                long fy = (2 * y + a1 * x + a3) % pl;
                if (mod_floor(Int(f), p) == 0 && mod_floor(Int(fx), p) == 0 &&
                    mod_floor(Int(fy), p) == 0) {
                    r = x;
                    t = y;
                    found = true;
                }
            }
        require_invariant(found, "no singular point found for p | disc");
    } else {
        r = singular_x_odd(c, p);
        t = mod_floor(-(c.a1() * r + c.a3()) * inv_mod(Int(2), p), p);
    }
    return apply_transform(c, Transform{1, r, 0, t});
}

struct CubicRoots {
    enum Kind { Distinct, Double, Triple } kind;
    Int repeated; // root of multiplicity >= 2, when kind != Distinct
};

// root structure of T^3 + A T^2 + B T + C over F_p
CubicRoots classify_cubic(const Int& A, const Int& B, const Int& C, const Int& p) {
    if (p <= 3) {
        long pl = static_cast<long>(p.get_si());
        int best_mult = 0;
        Int best_root = 0;
        for (long t = 0; t < pl; ++t) {
            // synthetic division by (T - t), repeatedly
            Poly f = {mod_floor(C, p), mod_floor(B, p), mod_floor(A, p), Int(1)};
            int mult = 0;
            while (f.size() > 1) {
                // evaluate and divide
                Int rem = 0;
                Poly q(f.size() - 1);
                for (size_t i = f.size(); i-- > 1;) {
                    Int coef = mod_floor(f[i] + rem, p);
                    q[i - 1] = coef;
                    rem = coef * t;
                }
                rem = mod_floor(f[0] + rem, p);
                if (rem != 0)
                    break;
                ++mult;
                f = q;
            }
            if (mult > best_mult) {
                best_mult = mult;
                best_root = t;
            }
        }
        if (best_mult >= 3)
            return {CubicRoots::Triple, best_root};
        if (best_mult == 2)
            return {CubicRoots::Double, best_root};
        return {CubicRoots::Distinct, 0};
    }
    Poly f = {C, B, A, Int(1)};
    Poly fp = {B, 2 * A, Int(3)};
    Poly d = poly_gcd(f, fp, p);
    if (d.size() <= 1)
        return {CubicRoots::Distinct, 0};
    if (d.size() == 2)
        return {CubicRoots::Double, mod_floor(-d[0] * inv_mod(d[1], p), p)};
    return {CubicRoots::Triple, mod_floor(-A * inv_mod(Int(3), p), p)};
}

// a Y^2 + b Y + c over F_p, a invertible: the double root when disc = 0.
// (For p = 2 the square root is the Frobenius inverse, i.e. the identity.)
std::optional<Int> quadratic_double_root(const Int& a, const Int& b, const Int& c,
                                         const Int& p) {
    Int disc = mod_floor(b * b - 4 * a * c, p);
    if (disc != 0)
        return std::nullopt;
    if (p == 2)
        return mod_floor(c * inv_mod(a, p), p);
    return mod_floor(-b * inv_mod(2 * a, p), p);
}

} // namespace

LocalData tate_local(const Curve& input, const Int& p) {
    check(p >= 2 && is_prime(p), "Tate's algorithm needs a prime");
    Curve E = input;
    while (true) {
        long n = val(E.disc(), p);
        if (n == 0)
            return {p, Kodaira{KodairaType::I0, 0}, 0, 0};

        E = move_singular_point_to_origin(E, p);
        require_invariant(val(E.a3(), p) >= 1 && val(E.a4(), p) >= 1 && val(E.a6(), p) >= 1,
                          "singular point not at the origin");

        if (val(E.b2(), p) == 0)
            return {p, Kodaira{KodairaType::In, n}, 1, n};
        if (val(E.a6(), p) < 2)
            return {p, Kodaira{KodairaType::II, 0}, n, n};
        if (val(E.b8(), p) < 3)
            return {p, Kodaira{KodairaType::III, 0}, n - 1, n};
        if (val(E.b6(), p) < 3)
            return {p, Kodaira{KodairaType::IV, 0}, n - 2, n};

        // normalise to v(a1),v(a2) >= 1, v(a3),v(a4) >= 2, v(a6) >= 3
        {
            Int s, t;
            if (p == 2) {
                s = mod_floor(E.a2(), 2);
                t = 2 * mod_floor(E.a6() / 4, 2);
            } else {
                Int p2 = p * p;
                s = mod_floor(-E.a1() * inv_mod(Int(2), p), p);
                t = mod_floor(-E.a3() * inv_mod(Int(2), p2), p2);
            }
            E = apply_transform(E, Transform{1, 0, s, t});
        }
        require_invariant(val(E.a1(), p) >= 1 && val(E.a2(), p) >= 1 &&
                              val(E.a3(), p) >= 2 && val(E.a4(), p) >= 2 &&
                              val(E.a6(), p) >= 3,
                          "step-6 normalisation failed");

        CubicRoots roots = classify_cubic(mod_floor(E.a2() / p, p),
                                          mod_floor(E.a4() / (p * p), p),
                                          mod_floor(E.a6() / (p * p * p), p), p);
        if (roots.kind == CubicRoots::Distinct)
            return {p, Kodaira{KodairaType::I0star, 0}, n - 4, n};

        if (roots.kind == CubicRoots::Double) {
            // I_m* subprocedure: alternately probe quadratics in Y and X.
            E = apply_transform(E, Transform{1, p * roots.repeated, 0, 0});
            require_invariant(val(E.a2(), p) == 1 && val(E.a4(), p) >= 3 &&
                                  val(E.a6(), p) >= 4,
                              "I_n* entry state");
            long m = 1;
            while (true) {
                if (m % 2 == 1) {
                    long k = (m + 1) / 2;
                    Int pk1 = int_pow(p, static_cast<unsigned long>(k + 1));
                    Int p2k2 = int_pow(p, static_cast<unsigned long>(2 * k + 2));
                    Int b = mod_floor(E.a3() / pk1, p);
                    Int cc = mod_floor(-(E.a6() / p2k2), p);
                    auto dbl = quadratic_double_root(Int(1), b, cc, p);
                    if (!dbl)
                        break;
                    E = apply_transform(E, Transform{1, 0, 0, pk1 * *dbl});
                } else {
                    long k = m / 2;
                    Int pk1 = int_pow(p, static_cast<unsigned long>(k + 1));
                    Int pk2 = int_pow(p, static_cast<unsigned long>(k + 2));
                    Int p2k3 = int_pow(p, static_cast<unsigned long>(2 * k + 3));
                    Int A = mod_floor(E.a2() / p, p);
                    Int B = mod_floor(E.a4() / pk2, p);
                    Int C = mod_floor(E.a6() / p2k3, p);
                    auto dbl = quadratic_double_root(A, B, C, p);
                    if (!dbl)
                        break;
                    E = apply_transform(E, Transform{1, pk1 * *dbl, 0, 0});
                }
                ++m;
            }
            return {p, Kodaira{KodairaType::Instar, m}, n - 4 - m, n};
        }

        // triple root
        E = apply_transform(E, Transform{1, p * roots.repeated, 0, 0});
        require_invariant(val(E.a2(), p) >= 2 && val(E.a4(), p) >= 3 && val(E.a6(), p) >= 4,
                          "triple-root translation failed");
        {
            Int b = mod_floor(E.a3() / (p * p), p);
            Int cc = mod_floor(-(E.a6() / (p * p * p * p)), p);
            auto dbl = quadratic_double_root(Int(1), b, cc, p);
            if (!dbl)
                return {p, Kodaira{KodairaType::IVstar, 0}, n - 6, n};
            E = apply_transform(E, Transform{1, 0, 0, p * p * *dbl});
        }
        require_invariant(val(E.a3(), p) >= 3 && val(E.a6(), p) >= 5,
                          "IV* translation failed");
        if (val(E.a4(), p) < 4)
            return {p, Kodaira{KodairaType::IIIstar, 0}, n - 7, n};
        if (val(E.a6(), p) < 6)
            return {p, Kodaira{KodairaType::IIstar, 0}, n - 8, n};

        // not minimal at p: rescale and start over
        E = apply_transform(E, Transform{p, 0, 0, 0});
    }
}

} // namespace cmdf
