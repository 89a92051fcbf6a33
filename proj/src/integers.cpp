#include "cmdf/integers.hpp"

#include "cmdf/errors.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace cmdf {

std::string to_string(const Int& n) { return n.get_str(); }

Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int isqrt(const Int& n) {
    check(n >= 0, "isqrt of a negative number");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_square(const Int& n) {
    if (n < 0)
        return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

long valuation(const Int& n, const Int& p) {
    check(n != 0, "valuation of 0");
    long v = 0;
    Int m = abs(n), q, r;
    while (true) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
        if (r != 0)
            return v;
        ++v;
        m = q;
    }
}

// Miller-Rabin with the witness set {2,...,37}: deterministic for
// n < 3.317e24 (Sorenson-Webster), far above anything this artifact meets.
static bool miller_rabin(const Int& n, unsigned long a) {
    Int base(a);
    if (mpz_divisible_p(n.get_mpz_t(), base.get_mpz_t()))
        return n == base;
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n - 1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == n - 1)
            return true;
    }
    return false;
}

bool is_prime(const Int& n) {
    if (n < 2)
        return false;
    static const std::array<unsigned long, 12> witnesses = {2,  3,  5,  7,  11, 13,
                                                            17, 19, 23, 29, 31, 37};
    for (unsigned long w : witnesses) {
        if (n == Int(w))
            return true;
        if (!miller_rabin(n, w))
            return false;
    }
    // Witness set is proved complete below 3.317e24; add extra rounds beyond.
    static const Int deterministic_limit("3317044064679887385961980");
    if (n < deterministic_limit)
        return true;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

// Pollard-Brent rho with a deterministic parameter schedule.
static Int pollard_rho(const Int& n) {
    for (unsigned long c = 1;; ++c) {
        Int x(2), y(2), d(1);
        Int ys, q(1);
        const unsigned long m = 128;
        unsigned long r = 1;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < r && d == 1) {
                ys = y;
                unsigned long lim = std::min(m, r - k);
                for (unsigned long i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += m;
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack
            do {
                ys = (ys * ys + c) % n;
                Int diff = abs(x - ys);
                mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (d == 1);
        }
        if (d != n)
            return d;
    }
}

static void factor_into(const Int& n, std::map<Int, unsigned>& out) {
    if (n == 1)
        return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

Factorization factorize(const Int& n) {
    check(n != 0, "factorize(0)");
    Int m = abs(n);
    std::map<Int, unsigned> acc;
    for (unsigned long p : {2ul, 3ul, 5ul}) {
        Int pp(p);
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[pp] += 1;
            m /= pp;
        }
    }
    // wheel mod 30 up to 1e6
    static const std::array<unsigned long, 8> wheel = {1, 7, 11, 13, 17, 19, 23, 29};
    for (unsigned long base = 0; base < 1000000 && m > 1; base += 30) {
        for (unsigned long off : wheel) {
            unsigned long p = base + off;
            if (p < 7)
                continue;
            Int pp(p);
            if (pp * pp > m)
                break;
            while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
                acc[pp] += 1;
                m /= pp;
            }
        }
    }
    if (m > 1) {
        if (m < Int(1000000) * Int(1000000)) {
            // below the trial bound squared, whatever remains is prime
            acc[m] += 1;
        } else {
            factor_into(m, acc);
        }
    }
    Factorization out;
    for (const auto& [p, e] : acc)
        out.push_back({p, e});
    return out;
}

Int factorization_value(const Factorization& f) {
    Int v(1);
    for (const auto& pe : f)
        v *= int_pow(pe.prime, pe.exponent);
    return v;
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> out;
    for (const auto& pe : factorize(n))
        out.push_back(pe.prime);
    return out;
}

int kronecker(const Int& a_in, const Int& n_in) {
    check(n_in != 0, "kronecker symbol with n = 0");
    Int a = a_in, n = n_in;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    // (a|2)^e for the even part of n
    unsigned long e = mpz_scan1(n.get_mpz_t(), 0);
    if (e > 0) {
        if (mpz_even_p(a.get_mpz_t()))
            return 0;
        mpz_fdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), e);
        if (e % 2 == 1) {
            unsigned long m8 = mpz_fdiv_ui(a.get_mpz_t(), 8);
            if (m8 == 3 || m8 == 5)
                result = -result;
        }
    }
    // Jacobi (a|n) for odd n > 0
    a = mod_floor(a, n);
    while (a != 0) {
        unsigned long v = mpz_scan1(a.get_mpz_t(), 0);
        mpz_fdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), v);
        if (v % 2 == 1) {
            unsigned long m8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
            if (m8 == 3 || m8 == 5)
                result = -result;
        }
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(n.get_mpz_t(), 4) == 3)
            result = -result;
        Int t = n % a;
        n = a;
        a = t;
    }
    return n == 1 ? result : 0;
}

Int squarefree_kernel(const Int& n) {
    check(n != 0, "squarefree kernel of 0");
    Int k(n < 0 ? -1 : 1);
    for (const auto& pe : factorize(n))
        if (pe.exponent % 2 == 1)
            k *= pe.prime;
    return k;
}

Int fundamental_discriminant_of(const Int& d) {
    check(d != 0 && squarefree_kernel(d) == d, "not a squarefree integer");
    if (mod_floor(d, 4) == 1)
        return d;
    return 4 * d;
}

bool is_fundamental_discriminant(const Int& d) {
    if (d == 0)
        return false;
    if (mod_floor(d, 4) == 1)
        return squarefree_kernel(d) == d;
    if (mod_floor(d, 4) == 0) {
        Int m = d / 4;
        Int r = mod_floor(m, 4);
        return (r == 2 || r == 3) && squarefree_kernel(m) == m;
    }
    return false;
}

} // namespace cmdf
