#include "cmdf/json_io.hpp"

namespace cmdf {

Json json_int(const Int& v) {
    if (v.fits_slong_p())
        return static_cast<std::int64_t>(v.get_si());
    return v.get_str();
}

Json json_rat(const Rat& v) {
    if (v.get_den() == 1)
        return json_int(v.get_num());
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Json json_curve(const Curve& c) {
    Json a = Json::array();
    for (const Int& v : c.coefficients())
        a.push_back(json_int(v));
    return a;
}

Json json_order(const Order& o) {
    Json j;
    j["disc"] = json_int(o.disc);
    j["fund_disc"] = json_int(o.fund_disc);
    j["conductor"] = json_int(o.conductor);
    j["unit_order"] = o.unit_order;
    return j;
}

Json json_invariants(const Curve& c) {
    Json j;
    j["curve"] = json_curve(c);
    j["b2"] = json_int(c.b2());
    j["b4"] = json_int(c.b4());
    j["b6"] = json_int(c.b6());
    j["b8"] = json_int(c.b8());
    j["c4"] = json_int(c.c4());
    j["c6"] = json_int(c.c6());
    j["disc"] = json_int(c.disc());
    j["j"] = json_rat(c.j());
    return j;
}

Json json_conductor(const ConductorData& cd, const Curve& minimal) {
    Json j;
    j["minimal_model"] = json_curve(minimal);
    j["conductor"] = json_int(cd.conductor);
    Json local = Json::array();
    for (const auto& ld : cd.local) {
        Json e;
        e["p"] = json_int(ld.p);
        e["kodaira"] = ld.kodaira.str();
        e["f"] = ld.conductor_exponent;
        e["disc_valuation"] = ld.disc_valuation;
        local.push_back(e);
    }
    j["local"] = local;
    return j;
}

Json json_classgroup(const Order& o, const ClassGroupData& cg, const Int& by_formula) {
    Json j;
    j["order"] = json_order(o);
    j["class_number"] = json_int(cg.h);
    j["class_number_formula"] = json_int(by_formula);
    Json forms = Json::array();
    for (const auto& f : cg.forms)
        forms.push_back(Json::array({json_int(f.a), json_int(f.b), json_int(f.c)}));
    j["forms"] = forms;
    return j;
}

Json json_height(const HeightResult& h) {
    Json j;
    j["p"] = h.p;
    j["h"] = h.h;
    j["witness"] = json_int(h.witness);
    return j;
}

Json json_image(const ImageSubgroup& img) {
    Json j;
    j["N"] = json_int(img.N);
    j["order"] = json_int(img.order);
    j["full_order"] = json_int(img.full_order);
    j["index"] = json_int(img.full_order / img.order);
    j["contains_minus_one"] = img.contains_minus_one;
    j["full"] = img.full;
    j["stabilized"] = img.stabilized;
    j["status"] = img.full ? "full" : (img.stabilized ? "probable image" : "lower bound");
    j["primes_scanned"] = img.primes_scanned;
    return j;
}

Json json_report(const EntanglementReport& rep) {
    Json j;
    j["order"] = json_order(rep.order);
    j["n_of_order"] = rep.n_of_order;
    j["special_prime"] = json_int(rep.special_prime);
    j["input_curve"] = json_curve(rep.input_curve);
    j["curve"] = json_curve(rep.curve);
    j["conductor"] = json_int(rep.conductor);
    j["twist_minimal"] = rep.twist_minimal;
    j["base_curve"] = rep.base_curve ? json_curve(*rep.base_curve) : Json(nullptr);
    j["delta_r"] = json_int(rep.delta_r);
    Json bad = Json::array();
    for (const Int& p : rep.bad_primes)
        bad.push_back(json_int(p));
    j["bad_primes"] = bad;
    j["minimality_threshold"] = rep.minimality_threshold;
    Json per = Json::array();
    for (const auto& d : rep.per_prime) {
        Json e;
        e["q"] = json_int(d.q);
        e["level"] = d.level;
        e["group_order"] = json_int(d.group_order);
        e["maximal"] = d.maximal;
        e["minimal_field"] = d.minimal_field;
        Json ent = Json::array();
        for (const Int& q : d.entangled_with)
            ent.push_back(json_int(q));
        e["entangled_with"] = ent;
        per.push_back(e);
    }
    j["per_prime"] = per;
    if (rep.relation) {
        Json r;
        r["p"] = json_int(rep.relation->p);
        r["delta_r"] = json_int(rep.relation->delta_r);
        r["threshold_m"] = rep.relation->threshold_m;
        r["division_field"] = rep.relation->division_field;
        r["intersection"] = rep.relation->intersection;
        j["entanglement_relation"] = r;
    } else {
        j["entanglement_relation"] = Json(nullptr);
    }
    j["disjoint_over_K"] = rep.disjoint_over_K;
    return j;
}

} // namespace cmdf
