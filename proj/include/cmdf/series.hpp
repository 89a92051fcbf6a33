#pragma once

#include "cmdf/errors.hpp"
#include "cmdf/integers.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace cmdf {

// Coefficient rings for truncated power series. A ring object carries its own
// state (the modulus, for residue rings) and is compared when two series meet.

struct IntRing {
    using Elem = Int;
    Elem zero() const { return Int(0); }
    Elem one() const { return Int(1); }
    Elem from_long(long v) const { return Int(v); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool try_invert(Elem& out, const Elem& a) const {
        if (a == 1 || a == -1) {
            out = a;
            return true;
        }
        return false;
    }
    bool same(const IntRing&) const { return true; }
    static constexpr const char* name() { return "Z"; }
};

struct RatRing {
    using Elem = Rat;
    Elem zero() const { return Rat(0); }
    Elem one() const { return Rat(1); }
    Elem from_long(long v) const { return Rat(v); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem neg(const Elem& a) const { return -a; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    bool is_zero(const Elem& a) const { return a == 0; }
    bool try_invert(Elem& out, const Elem& a) const {
        if (a == 0)
            return false;
        out = 1 / a;
        return true;
    }
    bool same(const RatRing&) const { return true; }
    static constexpr const char* name() { return "Q"; }
};

// Residues mod m for machine-sized m (m^2 must fit in uint64).
struct SmallModRing {
    std::uint64_t m = 0;
    using Elem = std::uint64_t;
    Elem zero() const { return 0; }
    Elem one() const { return m == 1 ? 0 : 1; }
    Elem from_long(long v) const {
        long r = v % static_cast<long>(m);
        if (r < 0)
            r += static_cast<long>(m);
        return static_cast<Elem>(r);
    }
    Elem from_int(const Int& v) const { return mpz_fdiv_ui(v.get_mpz_t(), m); }
    Elem add(Elem a, Elem b) const { return (a + b) % m; }
    Elem sub(Elem a, Elem b) const { return (a + m - b) % m; }
    Elem neg(Elem a) const { return a == 0 ? 0 : m - a; }
    Elem mul(Elem a, Elem b) const { return (a * b) % m; }
    bool is_zero(Elem a) const { return a == 0; }
    bool try_invert(Elem& out, Elem a) const {
        // extended Euclid
        std::int64_t t0 = 0, t1 = 1;
        std::int64_t r0 = static_cast<std::int64_t>(m), r1 = static_cast<std::int64_t>(a % m);
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
        }
        if (r0 != 1)
            return false;
        if (t0 < 0)
            t0 += static_cast<std::int64_t>(m);
        out = static_cast<Elem>(t0);
        return true;
    }
    bool same(const SmallModRing& o) const { return m == o.m; }
    static constexpr const char* name() { return "Z/m"; }
};

// Power series in 1..3 variables over an exact coefficient ring, truncated at
// a fixed total degree: no stored exponent tuple has total degree >= prec,
// and no operation ever reports a coefficient at or beyond the cutoff.
// Sparse map representation keyed by exponent tuples.
template <class Ring> class Series {
  public:
    using Elem = typename Ring::Elem;
    using Key = std::array<int, 3>;

    Series(Ring ring, int nvars, int prec) : ring_(ring), nvars_(nvars), prec_(prec) {
        check(nvars >= 1 && nvars <= 3, "series must have 1 to 3 variables");
        check(prec >= 1, "series precision must be >= 1");
    }

    static Series constant(Ring ring, int nvars, int prec, const Elem& c) {
        Series s(ring, nvars, prec);
        s.add_to_coeff({0, 0, 0}, c);
        return s;
    }

    // The i-th variable (0-based) as a series.
    static Series variable(Ring ring, int nvars, int prec, int i = 0) {
        Series s(ring, nvars, prec);
        check(i >= 0 && i < nvars, "variable index out of range");
        check(prec >= 2, "precision too small to hold a variable");
        Key k{0, 0, 0};
        k[static_cast<size_t>(i)] = 1;
        s.add_to_coeff(k, ring.one());
        return s;
    }

    const Ring& ring() const { return ring_; }
    int nvars() const { return nvars_; }
    int precision() const { return prec_; }
    const std::map<Key, Elem>& coefficients() const { return coeff_; }
    bool is_zero() const { return coeff_.empty(); }

    Elem coeff(int e0, int e1 = 0, int e2 = 0) const {
        auto it = coeff_.find(Key{e0, e1, e2});
        return it == coeff_.end() ? ring_.zero() : it->second;
    }

    Elem constant_term() const { return coeff(0, 0, 0); }

    void set_coeff(const Key& k, const Elem& v) {
        if (total_degree(k) >= prec_)
            return;
        if (ring_.is_zero(v))
            coeff_.erase(k);
        else
            coeff_[k] = v;
    }

    void add_to_coeff(const Key& k, const Elem& v) {
        if (total_degree(k) >= prec_)
            return;
        auto it = coeff_.find(k);
        if (it == coeff_.end()) {
            if (!ring_.is_zero(v))
                coeff_.emplace(k, v);
        } else {
            it->second = ring_.add(it->second, v);
            if (ring_.is_zero(it->second))
                coeff_.erase(it);
        }
    }

    Series truncated(int newprec) const {
        Series out(ring_, nvars_, std::min(newprec, prec_));
        for (const auto& [k, v] : coeff_)
            out.set_coeff(k, v);
        return out;
    }

    Series operator-() const {
        Series out(ring_, nvars_, prec_);
        for (const auto& [k, v] : coeff_)
            out.coeff_.emplace(k, ring_.neg(v));
        return out;
    }

    friend Series operator+(const Series& a, const Series& b) {
        a.require_compatible(b);
        Series out = a.truncated(std::min(a.prec_, b.prec_));
        for (const auto& [k, v] : b.coeff_)
            out.add_to_coeff(k, v);
        return out;
    }

    friend Series operator-(const Series& a, const Series& b) {
        a.require_compatible(b);
        Series out = a.truncated(std::min(a.prec_, b.prec_));
        for (const auto& [k, v] : b.coeff_)
            out.add_to_coeff(k, a.ring_.neg(v));
        return out;
    }

    friend Series operator*(const Series& a, const Series& b) {
        a.require_compatible(b);
        Series out(a.ring_, a.nvars_, std::min(a.prec_, b.prec_));
        for (const auto& [ka, va] : a.coeff_) {
            int da = total_degree(ka);
            if (da >= out.prec_)
                continue;
            for (const auto& [kb, vb] : b.coeff_) {
                if (da + total_degree(kb) >= out.prec_)
                    continue;
                Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
                out.add_to_coeff(k, a.ring_.mul(va, vb));
            }
        }
        return out;
    }

    Series scaled(const Elem& c) const {
        Series out(ring_, nvars_, prec_);
        for (const auto& [k, v] : coeff_)
            out.set_coeff(k, ring_.mul(v, c));
        return out;
    }

    bool operator==(const Series& o) const {
        return nvars_ == o.nvars_ && prec_ == o.prec_ && coeff_ == o.coeff_;
    }

    // Substitute the series gs[i] (all in the same target ring/variable set,
    // all with zero constant term) for the i-th variable.
    Series substituted(const std::vector<Series>& gs) const {
        check(static_cast<int>(gs.size()) == nvars_,
              "substitution needs one inner series per variable");
        int prec = prec_;
        for (const auto& g : gs) {
            check(g.ring_.same(ring_), "coefficient ring mismatch in substitution");
            check(g.ring_.is_zero(g.constant_term()),
                  "inner series must have zero constant term");
            prec = std::min(prec, g.prec_);
        }
        int out_nvars = gs[0].nvars_;
        for (const auto& g : gs)
            check(g.nvars_ == out_nvars, "inner series live in different variable sets");
        Series out(ring_, out_nvars, prec);
        // cache powers of each inner series
        std::array<int, 3> maxexp{0, 0, 0};
        for (const auto& [k, v] : coeff_)
            for (int i = 0; i < 3; ++i)
                maxexp[static_cast<size_t>(i)] =
                    std::max(maxexp[static_cast<size_t>(i)], k[static_cast<size_t>(i)]);
        std::array<std::vector<Series>, 3> pows;
        for (int i = 0; i < nvars_; ++i) {
            auto& pw = pows[static_cast<size_t>(i)];
            pw.push_back(Series::constant(ring_, out_nvars, prec, ring_.one()));
            for (int e = 1; e <= maxexp[static_cast<size_t>(i)]; ++e)
                pw.push_back(pw.back() * gs[static_cast<size_t>(i)]);
        }
        for (const auto& [k, v] : coeff_) {
            Series term = Series::constant(ring_, out_nvars, prec, v);
            for (int i = 0; i < nvars_; ++i)
                if (k[static_cast<size_t>(i)] > 0)
                    term = term * pows[static_cast<size_t>(i)][static_cast<size_t>(
                                      k[static_cast<size_t>(i)])];
            out += term;
        }
        return out;
    }

    Series& operator+=(const Series& o) { return *this = *this + o; }

    // 1/f for f with invertible constant term.
    Series inverse_unit() const {
        Elem c0inv{};
        check(ring_.try_invert(c0inv, constant_term()),
              "series constant term is not invertible");
        // f = c0 (1 - h): 1/f = c0^{-1} (1 + h + h^2 + ...), Horner form.
        Series h = Series::constant(ring_, nvars_, prec_, ring_.one()) - scaled(c0inv);
        Series acc = Series::constant(ring_, nvars_, prec_, ring_.one());
        for (int i = 1; i < prec_; ++i)
            acc = Series::constant(ring_, nvars_, prec_, ring_.one()) + h * acc;
        return acc.scaled(c0inv);
    }

    // d/dt for one-variable series.
    Series derivative() const {
        check(nvars_ == 1, "derivative is defined for one-variable series");
        Series out(ring_, 1, prec_);
        for (const auto& [k, v] : coeff_)
            if (k[0] >= 1)
                out.set_coeff(Key{k[0] - 1, 0, 0}, ring_.mul(v, ring_.from_long(k[0])));
        return out;
    }

    static int total_degree(const Key& k) { return k[0] + k[1] + k[2]; }

  private:
    void require_compatible(const Series& o) const {
        check(ring_.same(o.ring_), "coefficient ring mismatch");
        check(nvars_ == o.nvars_, "variable count mismatch");
    }

    Ring ring_;
    int nvars_;
    int prec_;
    std::map<Key, Elem> coeff_;
};

using IntSeries = Series<IntRing>;
using RatSeries = Series<RatRing>;
using ModSeries = Series<SmallModRing>;

// Spec surface: product truncated at the min precision, with ring and
// variable-count mismatches rejected.
template <class Ring> Series<Ring> series_mul(const Series<Ring>& f, const Series<Ring>& g) {
    return f * g;
}

// Spec surface: f(g) for one-variable f and inner g with g(0) = 0.
template <class Ring> Series<Ring> series_compose(const Series<Ring>& f, const Series<Ring>& g) {
    check(f.nvars() == 1, "outer series of a composition must have one variable");
    return f.substituted({g});
}

} // namespace cmdf
