#pragma once

#include "cmdf/quad_orders.hpp"
#include "cmdf/weierstrass.hpp"

#include <vector>

namespace cmdf {

// An element u + v*omega of O/NO, omega = (disc + sqrt(disc))/2.
struct ResidueElement {
    Int u, v;
    bool operator==(const ResidueElement& o) const { return u == o.u && v == o.v; }
};

// Arithmetic in O/NO: omega^2 = disc*omega - (disc^2 - disc)/4.
class ResidueRing {
  public:
    ResidueRing(Order order, Int N);

    const Order& order() const { return order_; }
    const Int& modulus() const { return N_; }

    ResidueElement reduce(const Int& u, const Int& v) const;
    ResidueElement one() const { return reduce(1, 0); }
    ResidueElement minus_one() const { return reduce(-1, 0); }
    ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const;
    Int norm(const ResidueElement& a) const; // u^2 + uv*disc + v^2 (disc^2-disc)/4 mod N
    bool is_unit(const ResidueElement& a) const;
    ResidueElement inverse(const ResidueElement& a) const;
    ResidueElement conj(const ResidueElement& a) const; // u + v*disc - v*omega

  private:
    Order order_;
    Int N_;
    Int omega_norm_; // (disc^2 - disc)/4
};

struct BruteForceUnits {
    Int count;
    std::vector<ResidueElement> elements;
};

// Exact unit count of (O/NO)^x by testing invertibility of all N^2 residues.
BruteForceUnits residue_units_bruteforce(const Order& order, const Int& N); // N <= 200

struct FrobeniusPair {
    ResidueElement pi, pi_bar;
    long a_q = 0;
    long b = 0; // 4q = a_q^2 + |disc| b^2, b >= 1
};

// Frobenius of a good split prime q (chi(q) = 1), reduced mod N: a_q from the
// actual point count, b from the Diophantine search, pi = (a_q - b*disc)/2 + b*omega.
FrobeniusPair frobenius_element(const Curve& c, const Order& order, long q, const Int& N);

struct ImageSubgroup {
    Int N;
    Int order;               // subgroup order (certified lower bound for the image)
    Int full_order;          // |(O/NO)^x|
    bool contains_minus_one = false;
    bool stabilized = false; // 50 consecutive split primes added nothing
    bool full = false;
    long primes_scanned = 0;
    std::vector<ResidueElement> generators;
    std::vector<ResidueElement> elements;
};

// Subgroup of (O/NO)^x generated by Frobenius pairs over good split primes
// q <= prime_bound coprime to N. Never overestimates the image; a non-full
// stabilized subgroup is a "probable image", not a proven one.
ImageSubgroup image_subgroup(const Curve& c, const Order& order, const Int& N,
                             long prime_bound); // N <= 200, prime_bound <= 1e5

} // namespace cmdf
