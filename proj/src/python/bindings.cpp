#include "cmdf/entangle.hpp"
#include "cmdf/errors.hpp"
#include "cmdf/formal_group.hpp"
#include "cmdf/frobenius.hpp"
#include "cmdf/json_io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

using cmdf::Curve;
using cmdf::Int;
using cmdf::Json;

py::int_ py_int(const Int& v) {
    PyObject* obj = PyLong_FromString(v.get_str().c_str(), nullptr, 10);
    if (!obj)
        throw py::error_already_set();
    return py::reinterpret_steal<py::int_>(obj);
}

py::object json_to_py(const Json& j) {
    switch (j.type()) {
    case Json::value_t::null:
        return py::none();
    case Json::value_t::boolean:
        return py::bool_(j.get<bool>());
    case Json::value_t::number_integer:
        return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned:
        return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float:
        return py::float_(j.get<double>());
    case Json::value_t::string:
        return py::str(j.get<std::string>());
    case Json::value_t::array: {
        py::list out;
        for (const auto& item : j)
            out.append(json_to_py(item));
        return out;
    }
    case Json::value_t::object: {
        py::dict out;
        for (auto it = j.begin(); it != j.end(); ++it)
            out[py::str(it.key())] = json_to_py(it.value());
        return out;
    }
    default:
        throw cmdf::internal_error("unhandled json type");
    }
}

Int int_from_py(py::handle h) { return Int(py::cast<std::string>(py::str(h))); }

Curve curve_from_py(py::handle obj) {
    if (py::isinstance<py::str>(obj))
        return cmdf::curve_from_string(py::cast<std::string>(obj));
    py::sequence seq = py::cast<py::sequence>(obj);
    cmdf::check(seq.size() == 5, "curve needs exactly five coefficients");
    return Curve(int_from_py(seq[0]), int_from_py(seq[1]), int_from_py(seq[2]),
                 int_from_py(seq[3]), int_from_py(seq[4]));
}

py::list curve_to_py(const Curve& c) {
    py::list out;
    for (const Int& a : c.coefficients())
        out.append(py_int(a));
    return out;
}

const cmdf::Registry& registry() {
    static cmdf::Registry reg = cmdf::Registry::load_default();
    return reg;
}

cmdf::Order order_of_curve(const Curve& c) {
    auto o = registry().lookup_by_j(c.j());
    cmdf::check(o.has_value(), "j(E) is not a registry CM invariant");
    return *o;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "entanglement of division fields of CM elliptic curves over Q";

    py::register_exception<cmdf::domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<cmdf::internal_error>(m, "InternalError", PyExc_RuntimeError);

    m.def(
        "classify",
        [](py::object curve) {
            return json_to_py(cmdf::json_report(cmdf::classify(curve_from_py(curve), registry())));
        },
        py::arg("curve"), "Full entanglement report for a CM curve over Q.");

    m.def(
        "conductor",
        [](py::object curve) {
            Curve c = curve_from_py(curve);
            return json_to_py(cmdf::json_conductor(cmdf::conductor(c), cmdf::minimal_model(c)));
        },
        py::arg("curve"), "Conductor with per-prime Kodaira data.");

    m.def(
        "invariants",
        [](py::object curve) {
            return json_to_py(cmdf::json_invariants(curve_from_py(curve)));
        },
        py::arg("curve"));

    m.def(
        "minimal_model",
        [](py::object curve) { return curve_to_py(cmdf::minimal_model(curve_from_py(curve))); },
        py::arg("curve"));

    m.def(
        "quadratic_twist",
        [](py::object curve, py::object d) {
            return curve_to_py(cmdf::quadratic_twist(curve_from_py(curve), int_from_py(d)));
        },
        py::arg("curve"), py::arg("d"));

    m.def(
        "twist_factor",
        [](py::object c1, py::object c2) -> py::object {
            auto d = cmdf::twist_factor(curve_from_py(c1), curve_from_py(c2));
            return d ? py::object(py_int(*d)) : py::none();
        },
        py::arg("curve1"), py::arg("curve2"));

    m.def(
        "class_number",
        [](py::object disc) {
            return py_int(
                cmdf::class_number_by_forms(cmdf::order_from_discriminant(int_from_py(disc))).h);
        },
        py::arg("disc"));

    m.def(
        "class_number_formula",
        [](py::object disc) {
            return py_int(
                cmdf::class_number_by_formula(cmdf::order_from_discriminant(int_from_py(disc))));
        },
        py::arg("disc"));

    m.def(
        "classgroup",
        [](py::object disc) {
            auto order = cmdf::order_from_discriminant(int_from_py(disc));
            return json_to_py(cmdf::json_classgroup(order, cmdf::class_number_by_forms(order),
                                                    cmdf::class_number_by_formula(order)));
        },
        py::arg("disc"));

    m.def(
        "residue_unit_count",
        [](py::object disc, py::object N) {
            return py_int(cmdf::residue_unit_count(cmdf::order_from_discriminant(int_from_py(disc)),
                                                   int_from_py(N)));
        },
        py::arg("disc"), py::arg("N"));

    m.def(
        "unit_image_order",
        [](py::object disc, py::object N) {
            return py_int(cmdf::unit_image_order(cmdf::order_from_discriminant(int_from_py(disc)),
                                                 int_from_py(N)));
        },
        py::arg("disc"), py::arg("N"));

    m.def(
        "ray_class_degree",
        [](py::object disc, py::object N) {
            auto d = cmdf::ray_class_degree(cmdf::order_from_discriminant(int_from_py(disc)),
                                            int_from_py(N));
            return py::make_tuple(py_int(d.over_ring_class), py_int(d.over_K));
        },
        py::arg("disc"), py::arg("N"));

    m.def(
        "formal_height",
        [](py::object curve, long p, py::object prec) {
            int pr = prec.is_none() ? static_cast<int>(p * p + 2) : py::cast<int>(prec);
            return json_to_py(cmdf::json_height(cmdf::reduced_height(curve_from_py(curve), p, pr)));
        },
        py::arg("curve"), py::arg("p"), py::arg("prec") = py::none());

    m.def(
        "frobenius_image",
        [](py::object curve, py::object N, long prime_bound) {
            Curve c = curve_from_py(curve);
            return json_to_py(cmdf::json_image(
                cmdf::image_subgroup(c, order_of_curve(c), int_from_py(N), prime_bound)));
        },
        py::arg("curve"), py::arg("N"), py::arg("prime_bound") = 10000);

    m.def(
        "hecke_conductor_norm",
        [](py::object curve) {
            Curve c = curve_from_py(curve);
            return py_int(cmdf::hecke_conductor_norm(c, order_of_curve(c)));
        },
        py::arg("curve"));

    m.def(
        "trace_of_frobenius",
        [](py::object curve, long p) { return cmdf::trace_of_frobenius(curve_from_py(curve), p); },
        py::arg("curve"), py::arg("p"));

    m.def(
        "count_points",
        [](py::object curve, long p) { return cmdf::count_points(curve_from_py(curve), p); },
        py::arg("curve"), py::arg("p"));

    m.def(
        "kronecker",
        [](py::object a, py::object n) { return cmdf::kronecker(int_from_py(a), int_from_py(n)); },
        py::arg("a"), py::arg("n"));

    m.def(
        "factorize",
        [](py::object n) {
            py::list out;
            for (const auto& pe : cmdf::factorize(int_from_py(n)))
                out.append(py::make_tuple(py_int(pe.prime), pe.exponent));
            return out;
        },
        py::arg("n"));

    m.def(
        "torsion_valuation_bound",
        [](py::object vp, py::object p, int h, int n) {
            cmdf::Rat b =
                cmdf::torsion_valuation_bound(int_from_py(vp), int_from_py(p), h, n);
            return py::make_tuple(py_int(b.get_num()), py_int(b.get_den()));
        },
        py::arg("vp"), py::arg("p"), py::arg("h"), py::arg("n"));

    m.def("registry", [] {
        py::list entries;
        for (const auto& e : registry().entries()) {
            py::dict d;
            d["disc"] = py_int(e.order.disc);
            d["fund_disc"] = py_int(e.order.fund_disc);
            d["order_conductor"] = py_int(e.order.conductor);
            d["j"] = json_to_py(cmdf::json_rat(e.j));
            d["classifiable"] = e.classifiable;
            py::list curves;
            for (const auto& rc : e.curves) {
                py::dict c;
                c["curve"] = curve_to_py(rc.curve);
                c["conductor"] = py_int(rc.conductor);
                curves.append(c);
            }
            d["curves"] = curves;
            entries.append(d);
        }
        return entries;
    });
}
