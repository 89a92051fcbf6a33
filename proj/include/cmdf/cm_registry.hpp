#pragma once

#include "cmdf/quad_orders.hpp"
#include "cmdf/weierstrass.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cmdf {

struct RegistryCurve {
    Curve curve;
    Int conductor; // |f_E| as stored (verified at load)
};

struct RegistryEntry {
    Order order;
    Rat j;
    std::vector<RegistryCurve> curves; // sorted by conductor, file order within ties
    bool classifiable = true;          // false for disc in {-3, -4} (j 0 / 1728)
};

// The bundled table of 30 twist-minimal curves, loaded from the line-oriented
// data file and re-verified curve by curve (j, conductor, counts per order).
class Registry {
  public:
    static Registry load_default();
    static Registry load_file(const std::string& path);
    static Registry parse(const std::string& text);

    const std::vector<RegistryEntry>& entries() const { return entries_; }
    int total_count() const;
    int classifiable_count() const; // rows with disc < -4: the 26 the classifier accepts

    // The unique class-number-one order whose CM j-invariant is j, if any.
    std::optional<Order> lookup_by_j(const Rat& j) const;
    const RegistryEntry* entry_by_disc(const Int& disc) const;

    // The n(O) twist-minimal curves A_1..A_n of the order, conductor-sorted.
    std::vector<Curve> twist_minimal_curves(const Order& order) const;

    // Is c isomorphic over K = Q(sqrt(dK)) to a registry curve? A quadratic
    // twist by d is trivial over K exactly when d is a square times dK.
    std::pair<bool, std::optional<Curve>> is_twist_minimal(const Curve& c) const;

  private:
    std::vector<RegistryEntry> entries_;
};

} // namespace cmdf
