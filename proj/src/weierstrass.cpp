#include "cmdf/weierstrass.hpp"

#include "cmdf/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cmdf {

Curve::Curve(Int a1, Int a2, Int a3, Int a4, Int a6)
    : a1_(std::move(a1)), a2_(std::move(a2)), a3_(std::move(a3)), a4_(std::move(a4)),
      a6_(std::move(a6)) {
    b2_ = a1_ * a1_ + 4 * a2_;
    b4_ = 2 * a4_ + a1_ * a3_;
    b6_ = a3_ * a3_ + 4 * a6_;
    b8_ = a1_ * a1_ * a6_ + 4 * a2_ * a6_ - a1_ * a3_ * a4_ + a2_ * a3_ * a3_ - a4_ * a4_;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    check(disc_ != 0, "singular curve (discriminant 0)");
    require_invariant(1728 * disc_ == c4_ * c4_ * c4_ - c6_ * c6_,
                      "1728 disc != c4^3 - c6^2");
    j_ = Rat(c4_ * c4_ * c4_, disc_);
    j_.canonicalize();
}

std::string Curve::to_string() const {
    std::ostringstream os;
    os << "[" << a1_ << "," << a2_ << "," << a3_ << "," << a4_ << "," << a6_ << "]";
    return os.str();
}

Curve curve_from_string(const std::string& text) {
    std::vector<Int> a;
    std::string cur;
    bool in = false;
    for (char ch : text) {
        if (ch == '[') {
            in = true;
        } else if (ch == ',' || ch == ']') {
            check(in, "curve must look like [a1,a2,a3,a4,a6]");
            check(!cur.empty(), "empty coefficient in curve");
            a.emplace_back(cur);
            cur.clear();
            if (ch == ']')
                in = false;
        } else if (!isspace(static_cast<unsigned char>(ch))) {
            check(in && (isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+'),
                  "invalid character in curve literal");
            cur += ch;
        }
    }
    check(!in && a.size() == 5, "curve must have exactly five integer coefficients");
    return Curve(a[0], a[1], a[2], a[3], a[4]);
}

Curve apply_transform(const Curve& c, const Transform& T) {
    const Int &u = T.u, &r = T.r, &s = T.s, &t = T.t;
    check(u != 0, "transform with u = 0");
    Int a1 = c.a1() + 2 * s;
    Int a2 = c.a2() - s * c.a1() + 3 * r - s * s;
    Int a3 = c.a3() + r * c.a1() + 2 * t;
    Int a4 = c.a4() - s * c.a3() + 2 * r * c.a2() - (t + r * s) * c.a1() + 3 * r * r -
             2 * s * t;
    Int a6 = c.a6() + r * c.a4() + r * r * c.a2() + r * r * r - t * c.a3() - t * t -
             r * t * c.a1();
    auto divide = [](const Int& x, const Int& d) {
        check(x % d == 0, "transform does not preserve integrality");
        return Int(x / d);
    };
    if (u != 1) {
        a1 = divide(a1, u);
        a2 = divide(a2, u * u);
        a3 = divide(a3, u * u * u);
        a4 = divide(a4, u * u * u * u);
        a6 = divide(a6, u * u * u * u * u * u);
    }
    return Curve(a1, a2, a3, a4, a6);
}

// Kraus: (c4, c6) with c4^3 - c6^2 = 1728 disc, disc != 0, arise from an
// integral model iff v3(c6) != 2 and, at 2, either c6 = -1 mod 4 or
// (16 | c4 and c6 mod 32 in {0, 8}).
static bool kraus_at_3(const Int& c6) {
    if (c6 == 0)
        return true;
    return valuation(c6, 3) != 2;
}

static bool kraus_at_2(const Int& c4, const Int& c6) {
    if (mod_floor(c6, 4) == 3)
        return true;
    if (mod_floor(c4, 16) != 0)
        return false;
    Int r = mod_floor(c6, 32);
    return r == 0 || r == 8;
}

// Connell's reconstruction of the reduced model from realisable (c4, c6):
// b2 is pinned mod 4 by the parity of c4 and mod 3 by -c6.
static Curve curve_from_c4c6(const Int& c4, const Int& c6) {
    int mod4 = mpz_odd_p(c4.get_mpz_t()) ? 1 : 0;
    int mod3 = static_cast<int>(mpz_fdiv_ui(Int(-c6).get_mpz_t(), 3));
    Int b2;
    for (Int cand : {Int(-4), Int(-3), Int(0), Int(1), Int(4), Int(5)}) {
        if (mod_floor(cand, 4) == mod4 && mod_floor(cand, 3) == mod3) {
            b2 = cand;
            break;
        }
    }
    Int num4 = b2 * b2 - c4;
    require_invariant(num4 % 24 == 0, "b4 not integral in c4c6 reconstruction");
    Int b4 = num4 / 24;
    Int num6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
    require_invariant(num6 % 216 == 0, "b6 not integral in c4c6 reconstruction");
    Int b6 = num6 / 216;
    Int a1 = mod_floor(b2, 2);
    Int a2 = (b2 - a1) / 4;
    Int a3 = mod_floor(b6, 2);
    Int num_a4 = b4 - a1 * a3;
    require_invariant(num_a4 % 2 == 0, "a4 not integral in c4c6 reconstruction");
    Int num_a6 = b6 - a3;
    require_invariant(num_a6 % 4 == 0, "a6 not integral in c4c6 reconstruction");
    Curve out(a1, a2, a3, num_a4 / 2, num_a6 / 4);
    require_invariant(out.c4() == c4 && out.c6() == c6, "c4c6 reconstruction mismatch");
    return out;
}

Curve minimal_model(const Curve& c) {
    const Int &c4 = c.c4(), &c6 = c.c6(), &disc = c.disc();
    // per-prime bound on the scaling exponent
    Int u(1);
    for (const auto& pe : factorize(disc)) {
        if (pe.exponent < 12)
            continue;
        const Int& p = pe.prime;
        long e = static_cast<long>(pe.exponent) / 12;
        if (c4 != 0)
            e = std::min(e, valuation(c4, p) / 4);
        if (c6 != 0)
            e = std::min(e, valuation(c6, p) / 6);
        long f = e;
        if (p == 2 || p == 3) {
            while (f > 0) {
                Int c4p = c4 / int_pow(p, static_cast<unsigned long>(4 * f));
                Int c6p = c6 / int_pow(p, static_cast<unsigned long>(6 * f));
                bool ok = (p == 2) ? kraus_at_2(c4p, c6p) : kraus_at_3(c6p);
                if (ok)
                    break;
                --f;
            }
        }
        u *= int_pow(p, static_cast<unsigned long>(f));
    }
    Int u4 = u * u * u * u;
    Int u6 = u4 * u * u;
    return curve_from_c4c6(c4 / u4, c6 / u6);
}

Curve quadratic_twist(const Curve& c, const Int& d) {
    check(d != 0, "twist by 0");
    check(squarefree_kernel(d) == d, "twist factor must be squarefree");
    if (d == 1)
        return c;
    // y^2 = x^3 - 27 c4 x - 54 c6, scaled by d
    Int A = -27 * c.c4() * d * d;
    Int B = -54 * c.c6() * d * d * d;
    return minimal_model(Curve(0, 0, 0, A, B));
}

std::optional<Int> twist_factor(const Curve& c1, const Curve& c2) {
    check(c1.j() == c2.j(), "twist_factor needs curves with equal j");
    check(c1.j() != 0 && c1.j() != 1728,
          "j in {0, 1728} admits quartic or sextic twists; quadratic twist "
          "factor undefined");
    // c4' = d^2 t^4 c4 and c6' = d^3 t^6 c6 for some rational t, so
    // (c6'/c6)(c4/c4') = d t^2.
    auto make_rat = [](const Int& num, const Int& den) {
        Rat r(num, den);
        r.canonicalize();
        return r;
    };
    Rat ratio = make_rat(c2.c6() * c1.c4(), c1.c6() * c2.c4());
    Int d = squarefree_kernel(ratio.get_num()) * squarefree_kernel(ratio.get_den());
    Rat t2 = ratio / d;
    t2.canonicalize();
    Rat lhs4 = make_rat(c2.c4(), c1.c4() * d * d);
    Rat lhs6 = make_rat(c2.c6(), c1.c6() * d * d * d);
    if (lhs4 != t2 * t2 || lhs6 != t2 * t2 * t2)
        return std::nullopt;
    return d;
}

std::string Kodaira::str() const {
    switch (type) {
    case KodairaType::I0:
        return "I0";
    case KodairaType::In:
        return "I" + std::to_string(n);
    case KodairaType::II:
        return "II";
    case KodairaType::III:
        return "III";
    case KodairaType::IV:
        return "IV";
    case KodairaType::I0star:
        return "I0*";
    case KodairaType::Instar:
        return "I" + std::to_string(n) + "*";
    case KodairaType::IVstar:
        return "IV*";
    case KodairaType::IIIstar:
        return "III*";
    case KodairaType::IIstar:
        return "II*";
    }
    return "?";
}

ConductorData conductor(const Curve& c) {
    Curve m = minimal_model(c);
    ConductorData out;
    out.conductor = 1;
    for (const Int& p : prime_divisors(m.disc())) {
        LocalData ld = tate_local(m, p);
        // the global model must already be minimal at p
        require_invariant(ld.disc_valuation == valuation(m.disc(), p),
                          "local minimality disagrees with the global minimal model");
        require_invariant(ld.conductor_exponent >= 1,
                          "bad prime of the minimal model with conductor exponent 0");
        out.conductor *= int_pow(p, static_cast<unsigned long>(ld.conductor_exponent));
        out.local.push_back(std::move(ld));
    }
    return out;
}

bool good_reduction(const Curve& c, const Int& p) {
    Curve m = minimal_model(c);
    return mod_floor(m.disc(), p) != 0;
}

long count_points(const Curve& c, long p) {
    check(p >= 2 && is_prime(Int(p)), "point count needs a prime");
    check(p <= 100000, "point count bound is 1e5");
    Curve m = minimal_model(c);
    check(mod_floor(m.disc(), Int(p)) != 0, "bad reduction at p");
    auto red = [&](const Int& v) {
        return static_cast<long>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)));
    };
    const long a1 = red(m.a1()), a2 = red(m.a2()), a3 = red(m.a3()), a4 = red(m.a4()),
               a6 = red(m.a6());
    if (p == 2) {
        long count = 1;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y) {
                long lhs = (y * y + a1 * x * y + a3 * y) % 2;
                long rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2;
                if (lhs == rhs)
                    ++count;
            }
        return count;
    }
    // complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    const long b2 = red(m.b2()), b4 = red(m.b4()), b6 = red(m.b6());
    std::vector<unsigned char> is_qr(static_cast<size_t>(p), 0);
    for (long y = 0; y <= p / 2; ++y)
        is_qr[static_cast<size_t>((y * y) % p)] = 1;
    long count = 1;
    for (long x = 0; x < p; ++x) {
        long g = (((4 * x + b2) % p) * x % p + 2 * b4 % p) % p * x % p;
        g = (g + b6) % p;
        if (g == 0)
            count += 1;
        else if (is_qr[static_cast<size_t>(g)])
            count += 2;
    }
    return count;
}

long trace_of_frobenius(const Curve& c, long p) {
    long a = p + 1 - count_points(c, p);
    require_invariant(static_cast<double>(a) * a <= 4.0 * p + 1e-9,
                      "Hasse bound violated");
    return a;
}

} // namespace cmdf
