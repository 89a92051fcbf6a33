#include "cmdf/cm_registry.hpp"

#include "cmdf/errors.hpp"
#include "registry_data.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cmdf {

Registry Registry::load_default() { return parse(kRegistryText); }

Registry Registry::load_file(const std::string& path) {
    std::ifstream in(path);
    check(in.good(), "cannot open registry file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

static Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(Int(s));
    Rat r(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

Registry Registry::parse(const std::string& text) {
    std::map<Int, RegistryEntry> by_disc;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string dk, f, j, fe, eq;
        if (!(ls >> dk))
            continue; // blank
        check(static_cast<bool>(ls >> f >> j >> fe >> eq),
              "registry line " + std::to_string(lineno) + ": expected 5 fields");
        Int disc_K(dk), cond_f(f), fE(fe);
        Int disc = cond_f * cond_f * disc_K;
        Curve curve = curve_from_string(eq);
        Rat jval = parse_rational(j);

        // load-time self check against the computed invariants
        check(curve.j() == jval, "registry line " + std::to_string(lineno) +
                                     ": stored j does not match the curve");
        ConductorData cd = conductor(curve);
        check(cd.conductor == fE, "registry line " + std::to_string(lineno) +
                                      ": stored conductor does not match the curve");

        auto it = by_disc.find(disc);
        if (it == by_disc.end()) {
            RegistryEntry e;
            e.order = order_from_discriminant(disc);
            check(e.order.fund_disc == disc_K && e.order.conductor == cond_f,
                  "registry line " + std::to_string(lineno) + ": inconsistent order data");
            e.j = jval;
            e.classifiable = disc < -4;
            it = by_disc.emplace(disc, std::move(e)).first;
        }
        check(it->second.j == jval,
              "registry: conflicting j for discriminant " + disc.get_str());
        it->second.curves.push_back({curve, fE});
    }

    Registry reg;
    for (auto& [disc, entry] : by_disc) {
        std::stable_sort(entry.curves.begin(), entry.curves.end(),
                         [](const RegistryCurve& a, const RegistryCurve& b) {
                             return a.conductor < b.conductor;
                         });
        size_t expected = (disc == -8 || disc == -16) ? 4 : 2;
        check(entry.curves.size() == expected,
              "registry: wrong curve count for discriminant " + disc.get_str());
        check(class_number_by_forms(entry.order).h == 1,
              "registry: order is not of class number one");
        reg.entries_.push_back(std::move(entry));
    }
    check(reg.total_count() == 30, "registry must hold exactly 30 curves");
    return reg;
}

int Registry::total_count() const {
    int n = 0;
    for (const auto& e : entries_)
        n += static_cast<int>(e.curves.size());
    return n;
}

int Registry::classifiable_count() const {
    int n = 0;
    for (const auto& e : entries_)
        if (e.classifiable)
            n += static_cast<int>(e.curves.size());
    return n;
}

std::optional<Order> Registry::lookup_by_j(const Rat& j) const {
    for (const auto& e : entries_)
        if (e.j == j)
            return e.order;
    return std::nullopt;
}

const RegistryEntry* Registry::entry_by_disc(const Int& disc) const {
    for (const auto& e : entries_)
        if (e.order.disc == disc)
            return &e;
    return nullptr;
}

std::vector<Curve> Registry::twist_minimal_curves(const Order& order) const {
    const RegistryEntry* e = entry_by_disc(order.disc);
    check(e != nullptr, "order " + order.disc.get_str() + " is not in the registry");
    std::vector<Curve> out;
    for (const auto& rc : e->curves)
        out.push_back(rc.curve);
    return out;
}

std::pair<bool, std::optional<Curve>> Registry::is_twist_minimal(const Curve& c) const {
    check(c.j() != 0 && c.j() != 1728, "j in {0, 1728} is outside the twist classification");
    auto order = lookup_by_j(c.j());
    check(order.has_value(), "j is not the invariant of a registry order");
    Curve m = minimal_model(c);
    Int k = squarefree_kernel(order->fund_disc); // sqrt(k) generates K
    for (const Curve& r : twist_minimal_curves(*order)) {
        if (m == r)
            return {true, r};
        auto d = twist_factor(r, m);
        if (d && (*d == 1 || *d == k))
            return {true, r};
    }
    return {false, std::nullopt};
}

} // namespace cmdf
