#pragma once

#include "cmdf/cm_registry.hpp"
#include "cmdf/entangle.hpp"
#include "cmdf/formal_group.hpp"
#include "cmdf/frobenius.hpp"
#include "cmdf/quad_orders.hpp"
#include "cmdf/weierstrass.hpp"

#include <json.hpp>

namespace cmdf {

using Json = nlohmann::ordered_json;

// Integers are emitted as JSON numbers when they fit in int64, as decimal
// strings otherwise; rationals as numbers when integral, "p/q" strings else.
Json json_int(const Int& v);
Json json_rat(const Rat& v);
Json json_curve(const Curve& c);
Json json_order(const Order& o);
Json json_invariants(const Curve& c);
Json json_conductor(const ConductorData& cd, const Curve& minimal);
Json json_classgroup(const Order& o, const ClassGroupData& cg, const Int& by_formula);
Json json_height(const HeightResult& h);
Json json_image(const ImageSubgroup& img);
Json json_report(const EntanglementReport& rep);

} // namespace cmdf
