#pragma once

#include "cmdf/cm_registry.hpp"
#include "cmdf/quad_orders.hpp"
#include "cmdf/weierstrass.hpp"

#include <optional>
#include <vector>

namespace cmdf {

// n(O): 4 for Z[2i] and Z[sqrt(-2)] (disc -16, -8), else 2.
int n_of_order(const Order& order);

// Unique factorization Delta = Delta2 * Delta_odd with Delta2 in {1,-4,8,-8}
// and Delta_odd an odd fundamental discriminant.
std::pair<Int, Int> fundamental_discriminant_split(const Int& Delta);

enum class TwistTag { T1, T2, T3, T4 };

struct TwistCase {
    TwistTag tag;
    bool maximal_unconditionally; // else: maximal iff the base curve is
};

// Which of the four reduced twist cases governs rho_{E^(Delta), p^n}:
//   T1: Delta = (-1)^((q-1)/2) q, odd prime q not dividing p*fE  -> unconditional
//   T2: p >= 3 and Delta = (-1)^((p-1)/2) p                      -> tied to base
//   T3: Delta in {-4,-8,8}, 2 not dividing p*fE                  -> unconditional
//   T4: Delta in {-4,-8,8}, p = 2 (levels 2^n >= |Delta|)        -> tied to base
TwistCase twist_case(const Int& Delta, const Int& p, const Int& fE);

// Primes dividing f_O * Delta_K * f_E: outside this set the p-power division
// fields are pairwise linearly disjoint.
std::vector<Int> bad_prime_set(const Curve& c, const Order& order);

// |(O/q^m O)^x|, halved when the division field is minimal (equal to the ray
// class field). The minimal case requires m >= n(O) - 1.
Int galois_order(const Order& order, const Int& q, int m, bool minimal);

// conductor(E) / |Delta_K|: the norm of the Hecke conductor, by the conductor
// factorization f_E = N(f_phi) * disc(K). Must come out integral.
Int hecke_conductor_norm(const Curve& c, const Order& order);

struct PrimeDescriptor {
    Int q;
    int level;       // m at which group_order is reported
    Int group_order; // |Gal(K(E[q^m])/K)|
    bool maximal;
    bool minimal_field;
    std::vector<Int> entangled_with;
};

struct EntanglementRelation {
    Int p;
    Int delta_r;
    int threshold_m; // valid for every m >= threshold
    std::string division_field; // K(E[p^m]) as a ray-class-field expression
    std::string intersection;   // K(E[p^m]) cap K(E[delta_r])
};

struct EntanglementReport {
    EntanglementReport(Order o, Curve input, Curve minimal)
        : order(std::move(o)), input_curve(std::move(input)), curve(std::move(minimal)) {}

    Order order;
    int n_of_order = 2;
    Int special_prime;
    Curve input_curve;
    Curve curve; // minimal model analysed
    Int conductor;
    bool twist_minimal = false;
    std::optional<Curve> base_curve; // registry curve (the A_{r0} when twisted)
    Int delta_r{1};                  // 1 when twist-minimal
    std::vector<Int> bad_primes;
    int minimality_threshold = 1; // n(O) - 1, clamped to >= 1
    std::vector<PrimeDescriptor> per_prime;
    std::optional<EntanglementRelation> relation;
    bool disjoint_over_K = false;
};

// Full classification of a CM curve over Q with class-number-one order and
// disc < -4: twist-minimality, bad primes, per-prime Galois orders, the
// entanglement relation for proper twists, and the disjointness verdict.
EntanglementReport classify(const Curve& c, const Registry& registry);

} // namespace cmdf
