#pragma once

#include "cmdf/integers.hpp"

#include <vector>

namespace cmdf {

// An imaginary quadratic order of discriminant disc = conductor^2 * fund_disc,
// written O = Z + Z*omega with omega = (disc + sqrt(disc))/2, so omega
// satisfies x^2 - disc*x + (disc^2 - disc)/4 = 0.
struct Order {
    Int disc;      // < 0, = 0 or 1 mod 4
    Int fund_disc; // fundamental discriminant of the field
    Int conductor; // index of the order in the maximal order
    int unit_order = 2; // 6 for disc -3, 4 for disc -4, else 2

    bool operator==(const Order& o) const { return disc == o.disc; }
};

Order order_from_discriminant(const Int& disc);

// A primitive reduced binary quadratic form a x^2 + b x y + c y^2.
struct QuadForm {
    Int a, b, c;
    bool operator==(const QuadForm& o) const { return a == o.a && b == o.b && c == o.c; }
};

struct ClassGroupData {
    Int h; // class number
    std::vector<QuadForm> forms;
};

// Enumerates every reduced primitive form of the order's discriminant:
// |b| <= a <= c, b = disc mod 2, b >= 0 when |b| = a or a = c.
ClassGroupData class_number_by_forms(const Order& order);

// h = h_K * f / [O_K^x : O^x] * prod_{p | f} (1 - (dK/p)/p), evaluated exactly.
Int class_number_by_formula(const Order& order);

// |(O/NO)^x| = prod over p^k || N of p^(2k-2) (p - chi(p)) (p - 1),
// chi(p) the Kronecker symbol (disc|p). chi vanishes for p | conductor,
// matching the local ring F_p[x]/(x^2) there.
Int residue_unit_count(const Order& order, const Int& N);

// Size of the image of O^x in (O/NO)^x, by mapping each unit explicitly
// in the {1, omega} basis.
Int unit_image_order(const Order& order, const Int& N);

struct RayClassDegree {
    Int over_ring_class; // [H_{N,O} : H_O] = |(O/NO)^x| / |image of O^x|
    Int over_K;          // times the class number
};

RayClassDegree ray_class_degree(const Order& order, const Int& N);

// Coordinates of the unit group O^x in the {1, omega} basis.
std::vector<std::pair<Int, Int>> unit_coordinates(const Order& order);

} // namespace cmdf
