#pragma once

#include "cmdf/integers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cmdf {

// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z,
// with the b/c invariants and j cached at construction. Rejects disc = 0.
class Curve {
  public:
    Curve(Int a1, Int a2, Int a3, Int a4, Int a6);

    const Int& a1() const { return a1_; }
    const Int& a2() const { return a2_; }
    const Int& a3() const { return a3_; }
    const Int& a4() const { return a4_; }
    const Int& a6() const { return a6_; }

    const Int& b2() const { return b2_; }
    const Int& b4() const { return b4_; }
    const Int& b6() const { return b6_; }
    const Int& b8() const { return b8_; }
    const Int& c4() const { return c4_; }
    const Int& c6() const { return c6_; }
    const Int& disc() const { return disc_; }
    const Rat& j() const { return j_; }

    std::vector<Int> coefficients() const { return {a1_, a2_, a3_, a4_, a6_}; }
    std::string to_string() const; // "[a1,a2,a3,a4,a6]"

    bool operator==(const Curve& o) const {
        return a1_ == o.a1_ && a2_ == o.a2_ && a3_ == o.a3_ && a4_ == o.a4_ && a6_ == o.a6_;
    }

  private:
    Int a1_, a2_, a3_, a4_, a6_;
    Int b2_, b4_, b6_, b8_, c4_, c6_, disc_;
    Rat j_;
};

Curve curve_from_string(const std::string& text); // "[a1,a2,a3,a4,a6]"

// x = u^2 x' + r, y = u^3 y' + s u^2 x' + t. Maps integral models to integral
// models when u = 1; general u requires the usual divisibilities.
struct Transform {
    Int u{1}, r{0}, s{0}, t{0};
};

Curve apply_transform(const Curve& c, const Transform& T);

// Integral model of the quadratic twist by squarefree d (via the short form
// y^2 = x^3 - 27 c4 x - 54 c6 scaled by d, then minimalised).
Curve quadratic_twist(const Curve& c, const Int& d);

// The squarefree d with c2 isomorphic over Q to the twist of c1 by d, or
// nullopt if the c-invariant ratios are inconsistent. Requires equal j not
// in {0, 1728}.
std::optional<Int> twist_factor(const Curve& c1, const Curve& c2);

// Global minimal model, canonicalised with a1, a3 in {0,1} and a2 in {-1,0,1}
// (Laska-Kraus-Connell).
Curve minimal_model(const Curve& c);

enum class KodairaType { I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

struct Kodaira {
    KodairaType type = KodairaType::I0;
    long n = 0; // for In / In*
    std::string str() const;
};

struct LocalData {
    Int p;
    Kodaira kodaira;
    long conductor_exponent = 0;
    long disc_valuation = 0; // of the local minimal model
};

struct ConductorData {
    Int conductor;
    std::vector<LocalData> local; // one entry per bad prime, ascending
};

// Tate's algorithm at p on an integral model (handles non-minimal input by
// rescaling internally).
LocalData tate_local(const Curve& c, const Int& p);

// Conductor of the global minimal model, with per-prime Kodaira data.
ConductorData conductor(const Curve& c);

bool good_reduction(const Curve& c, const Int& p);

// |E~(F_p)| of the minimal model, point at infinity included. Naive
// enumeration; p <= 1e5 and good reduction required.
long count_points(const Curve& c, long p);

// a_p = p + 1 - |E~(F_p)|, with the Hasse bound asserted.
long trace_of_frobenius(const Curve& c, long p);

} // namespace cmdf
