#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace cmdf {

using Int = mpz_class;
using Rat = mpq_class;

struct PrimePower {
    Int prime;
    unsigned exponent = 0;

    bool operator==(const PrimePower& o) const {
        return prime == o.prime && exponent == o.exponent;
    }
};

// Canonical factorization of |n|: primes strictly ascending, exponents >= 1.
using Factorization = std::vector<PrimePower>;

// Deterministic for |n| < 3.317e24 (fixed Miller-Rabin witness set 2..37).
bool is_prime(const Int& n);

Factorization factorize(const Int& n); // n != 0
Int factorization_value(const Factorization& f);
std::vector<Int> prime_divisors(const Int& n); // n != 0, ascending

// Kronecker symbol (a|n) with the standard conventions at 2 and -1. n != 0.
int kronecker(const Int& a, const Int& n);

Int isqrt(const Int& n); // n >= 0
bool is_square(const Int& n);

// Representative of a mod m in [0, m), m > 0.
Int mod_floor(const Int& a, const Int& m);

Int int_pow(const Int& base, unsigned long e);

// Largest e with p^e | n (n != 0).
long valuation(const Int& n, const Int& p);

// Signed squarefree part: n = kernel * square with kernel squarefree, sign(kernel) = sign(n).
Int squarefree_kernel(const Int& n);

// The fundamental discriminant with the given squarefree kernel: d if d = 1 mod 4, else 4d.
Int fundamental_discriminant_of(const Int& squarefree_d);

// 1 counts as the trivial fundamental discriminant.
bool is_fundamental_discriminant(const Int& d);

std::string to_string(const Int& n);

} // namespace cmdf
