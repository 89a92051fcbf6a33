// cmdf: entanglement analysis of division fields of CM elliptic curves over Q.
//
// Exit codes: 0 ok, 2 argument parse error, 3 violated mathematical
// precondition, 4 internal invariant failure.

#include "cmdf/entangle.hpp"
#include "cmdf/errors.hpp"
#include "cmdf/formal_group.hpp"
#include "cmdf/frobenius.hpp"
#include "cmdf/json_io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>

namespace {

using cmdf::Int;
using cmdf::Json;

struct Ctx {
    bool json = false;
    long prime_bound = 10000;
    int precision = 12;
    bool precision_set = false;
    std::string registry_path;
    std::vector<std::string> diagnostics;

    cmdf::Registry registry() const {
        if (!registry_path.empty())
            return cmdf::Registry::load_file(registry_path);
        return cmdf::Registry::load_default();
    }
};

void emit(const Ctx& ctx, const Json& payload, const std::function<void()>& text) {
    if (ctx.json) {
        Json doc;
        doc["status"] = "ok";
        doc["payload"] = payload;
        doc["diagnostics"] = ctx.diagnostics;
        std::cout << doc.dump(2) << "\n";
    } else {
        text();
    }
}

std::string plain(const Json& v) {
    return v.is_string() ? v.get<std::string>() : v.dump();
}

void print_report_text(const Json& r) {
    std::cout << "curve            " << r["curve"].dump() << "\n";
    std::cout << "order disc       " << plain(r["order"]["disc"]) << "  (dK="
              << plain(r["order"]["fund_disc"]) << ", f=" << plain(r["order"]["conductor"])
              << ")\n";
    std::cout << "conductor        " << plain(r["conductor"]) << "\n";
    std::cout << "special prime    " << plain(r["special_prime"])
              << "   n(O)=" << r["n_of_order"] << "\n";
    std::cout << "twist minimal    " << (r["twist_minimal"].get<bool>() ? "yes" : "no")
              << "\n";
    if (!r["base_curve"].is_null())
        std::cout << "base curve       " << r["base_curve"].dump() << "\n";
    std::cout << "delta_r          " << plain(r["delta_r"]) << "\n";
    std::cout << "bad primes S     " << r["bad_primes"].dump() << "\n";
    for (const auto& d : r["per_prime"]) {
        std::cout << "  q=" << plain(d["q"]) << "  |Gal(K(E[q^" << d["level"]
                  << "])/K)|=" << plain(d["group_order"])
                  << (d["maximal"].get<bool>() ? "  maximal" : "")
                  << (d["minimal_field"].get<bool>() ? "  minimal(ray class field)" : "");
        if (!d["entangled_with"].empty())
            std::cout << "  entangled with " << d["entangled_with"].dump();
        std::cout << "\n";
    }
    if (!r["entanglement_relation"].is_null()) {
        const auto& rel = r["entanglement_relation"];
        std::cout << "relation         K(E[" << plain(rel["p"]) << "^m]) = "
                  << rel["division_field"].get<std::string>() << " and meets K(E["
                  << plain(rel["delta_r"]) << "]) in "
                  << rel["intersection"].get<std::string>() << " for m >= "
                  << rel["threshold_m"] << "\n";
    }
    std::cout << "disjoint over K  " << (r["disjoint_over_K"].get<bool>() ? "yes" : "no")
              << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"division-field entanglement of CM elliptic curves over Q"};
    app.require_subcommand(1);
    Ctx ctx;
    app.add_flag("--json", ctx.json, "emit the stable JSON document");
    app.add_option("--prime-bound", ctx.prime_bound, "Frobenius prime bound")
        ->capture_default_str();
    app.add_option("--precision", ctx.precision, "series precision (total degree)")
        ->capture_default_str();
    app.add_option("--registry", ctx.registry_path, "registry file path");

    std::string curve_str;
    std::string disc_str;
    long arg_n = 0;
    long arg_p = 0;

    std::function<void()> action;

    auto add_subcommand = [&app](const std::string& name, const std::string& desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->fallthrough(); // global flags may follow the positionals
        return sub;
    };

    auto* c_classify = add_subcommand("classify", "full entanglement report");
    c_classify->add_option("curve", curve_str, "[a1,a2,a3,a4,a6]")->required();
    c_classify->callback([&] {
        action = [&] {
            auto rep = cmdf::classify(cmdf::curve_from_string(curve_str), ctx.registry());
            Json payload = cmdf::json_report(rep);
            emit(ctx, payload, [&] { print_report_text(payload); });
        };
    });

    auto* c_conductor = add_subcommand("conductor", "conductor with Kodaira data");
    c_conductor->add_option("curve", curve_str)->required();
    c_conductor->callback([&] {
        action = [&] {
            cmdf::Curve c = cmdf::curve_from_string(curve_str);
            cmdf::Curve m = cmdf::minimal_model(c);
            auto cd = cmdf::conductor(c);
            Json payload = cmdf::json_conductor(cd, m);
            emit(ctx, payload, [&] {
                std::cout << plain(payload["conductor"]) << "\n";
                for (const auto& ld : payload["local"])
                    std::cout << "  p=" << plain(ld["p"]) << "  "
                              << ld["kodaira"].get<std::string>() << "  f=" << ld["f"]
                              << "  v(disc)=" << ld["disc_valuation"] << "\n";
            });
        };
    });

    auto* c_inv = add_subcommand("invariants", "b/c invariants, disc, j");
    c_inv->add_option("curve", curve_str)->required();
    c_inv->callback([&] {
        action = [&] {
            cmdf::Curve c = cmdf::curve_from_string(curve_str);
            Json payload = cmdf::json_invariants(c);
            emit(ctx, payload, [&] {
                std::cout << "c4   " << plain(payload["c4"]) << "\n"
                          << "c6   " << plain(payload["c6"]) << "\n"
                          << "disc " << plain(payload["disc"]) << "\n"
                          << "j    " << plain(payload["j"]) << "\n";
            });
        };
    });

    auto* c_twist = add_subcommand("twist", "quadratic twist by squarefree d");
    c_twist->add_option("curve", curve_str)->required();
    std::string dstr;
    c_twist->add_option("d", dstr)->required();
    c_twist->callback([&] {
        action = [&] {
            cmdf::Curve c = cmdf::curve_from_string(curve_str);
            cmdf::Curve t = cmdf::quadratic_twist(c, Int(dstr));
            Json payload;
            payload["curve"] = cmdf::json_curve(t);
            emit(ctx, payload, [&] { std::cout << t.to_string() << "\n"; });
        };
    });

    auto* c_cg = add_subcommand("classgroup", "reduced forms and class number");
    c_cg->add_option("disc", disc_str)->required();
    c_cg->callback([&] {
        action = [&] {
            auto order = cmdf::order_from_discriminant(Int(disc_str));
            auto cg = cmdf::class_number_by_forms(order);
            Json payload = cmdf::json_classgroup(order, cg, cmdf::class_number_by_formula(order));
            emit(ctx, payload, [&] {
                std::cout << "h(" << disc_str << ") = " << plain(payload["class_number"])
                          << "\n";
                for (const auto& f : payload["forms"])
                    std::cout << "  " << f.dump() << "\n";
            });
        };
    });

    auto* c_ou = add_subcommand("order-units", "|(O/NO)^x|");
    c_ou->add_option("disc", disc_str)->required();
    c_ou->add_option("N", arg_n)->required();
    c_ou->callback([&] {
        action = [&] {
            auto order = cmdf::order_from_discriminant(Int(disc_str));
            Int count = cmdf::residue_unit_count(order, Int(arg_n));
            Json payload;
            payload["disc"] = cmdf::json_int(order.disc);
            payload["N"] = arg_n;
            payload["unit_count"] = cmdf::json_int(count);
            payload["unit_image_order"] =
                cmdf::json_int(cmdf::unit_image_order(order, Int(arg_n)));
            emit(ctx, payload, [&] { std::cout << count << "\n"; });
        };
    });

    auto* c_rd = add_subcommand("ray-degree", "[H_{N,O}:H_O] and [H_{N,O}:K]");
    c_rd->add_option("disc", disc_str)->required();
    c_rd->add_option("N", arg_n)->required();
    c_rd->callback([&] {
        action = [&] {
            auto order = cmdf::order_from_discriminant(Int(disc_str));
            auto deg = cmdf::ray_class_degree(order, Int(arg_n));
            Json payload;
            payload["disc"] = cmdf::json_int(order.disc);
            payload["N"] = arg_n;
            payload["over_ring_class"] = cmdf::json_int(deg.over_ring_class);
            payload["over_K"] = cmdf::json_int(deg.over_K);
            emit(ctx, payload, [&] {
                std::cout << deg.over_ring_class << " " << deg.over_K << "\n";
            });
        };
    });

    auto* c_fh = add_subcommand("formal-height", "height of the reduced formal group");
    c_fh->add_option("curve", curve_str)->required();
    c_fh->add_option("p", arg_p)->required();
    c_fh->callback([&] {
        action = [&] {
            cmdf::Curve c = cmdf::curve_from_string(curve_str);
            int prec = ctx.precision_set ? ctx.precision
                                         : static_cast<int>(arg_p * arg_p + 2);
            auto h = cmdf::reduced_height(c, arg_p, prec);
            Json payload = cmdf::json_height(h);
            emit(ctx, payload, [&] {
                std::cout << "h = " << h.h << "  (witness t^" << h.witness << ")\n";
            });
        };
    });

    auto* c_fi = add_subcommand("frobenius-image",
                                    "subgroup of (O/NO)^x generated by Frobenius");
    c_fi->add_option("curve", curve_str)->required();
    c_fi->add_option("N", arg_n)->required();
    c_fi->callback([&] {
        action = [&] {
            cmdf::Curve c = cmdf::curve_from_string(curve_str);
            auto reg = ctx.registry();
            auto order = reg.lookup_by_j(c.j());
            cmdf::check(order.has_value(), "j(E) is not a registry CM invariant");
            auto img = cmdf::image_subgroup(c, *order, Int(arg_n), ctx.prime_bound);
            Json payload = cmdf::json_image(img);
            emit(ctx, payload, [&] {
                std::cout << "order " << img.order << " of " << img.full_order << " ("
                          << payload["status"].get<std::string>() << "), -1 "
                          << (img.contains_minus_one ? "present" : "absent") << "\n";
            });
        };
    });

    auto* c_vr = add_subcommand("verify-registry", "re-verify the bundled table");
    c_vr->callback([&] {
        action = [&] {
            auto reg = ctx.registry(); // parse re-runs the self check
            Json payload;
            payload["total"] = reg.total_count();
            payload["classifiable"] = reg.classifiable_count();
            Json entries = Json::array();
            for (const auto& e : reg.entries()) {
                Json je;
                je["disc"] = cmdf::json_int(e.order.disc);
                je["j"] = cmdf::json_rat(e.j);
                je["classifiable"] = e.classifiable;
                Json cs = Json::array();
                for (const auto& rc : e.curves) {
                    Json jc;
                    jc["curve"] = cmdf::json_curve(rc.curve);
                    jc["conductor"] = cmdf::json_int(rc.conductor);
                    cs.push_back(jc);
                }
                je["curves"] = cs;
                entries.push_back(je);
            }
            payload["entries"] = entries;
            payload["ok"] = true;
            emit(ctx, payload, [&] {
                std::cout << "registry ok: " << reg.total_count() << " curves, "
                          << reg.classifiable_count() << " classifiable\n";
            });
        };
    });

    try {
        app.parse(argc, argv);
        ctx.precision_set = app.count("--precision") > 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        action();
        return 0;
    } catch (const cmdf::domain_error& e) {
        if (ctx.json) {
            Json doc;
            doc["status"] = "error";
            doc["error"] = e.what();
            doc["diagnostics"] = ctx.diagnostics;
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cerr << "error: " << e.what() << "\n";
        }
        return 3;
    } catch (const std::exception& e) {
        if (ctx.json) {
            Json doc;
            doc["status"] = "error";
            doc["error"] = e.what();
            doc["diagnostics"] = ctx.diagnostics;
            std::cout << doc.dump(2) << "\n";
        } else {
            std::cerr << "internal error: " << e.what() << "\n";
        }
        return 4;
    }
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
