#pragma once

#include "cmdf/series.hpp"
#include "cmdf/weierstrass.hpp"

namespace cmdf {

// The formal group of a Weierstrass model: F(z1,z2) = z1 + z2 + ... with
// integer coefficients, truncated at a total-degree cutoff.
struct FormalGroupLaw {
    Curve curve;
    int precision;
    IntSeries F; // two variables
};

FormalGroupLaw group_law(const Curve& c, int prec); // prec >= 2

// [m](t): [1] = t, [m+1] = F([m], t), [-1] the formal inverse.
IntSeries multiplication_by_m(const FormalGroupLaw& fg, long m);

// The formal inversion series i(t) with F(t, i(t)) = 0.
IntSeries inversion_series(const Curve& c, int prec);

struct HeightResult {
    long p;
    int h;       // 1 or 2
    Int witness; // lowest exponent with a nonzero coefficient in [p] mod p = p^h
};

// Height of the reduced formal group at a good prime: h = 2 iff [p] mod p has
// zero coefficients at every exponent not divisible by p^2. Needs prec > p^2
// so the t^(p^2) coefficient is visible; cross-checked against a_p mod p.
HeightResult reduced_height(const Curve& c, long p, int prec);

// Valuation bound v_S(x) <= v_S(p) / (p^(h(n-1)) (p^h - 1)) as an exact rational.
Rat torsion_valuation_bound(const Int& vp, const Int& p, int h, int n);

} // namespace cmdf
