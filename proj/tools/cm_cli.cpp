// Command-line driver: `cm <subcommand> ...`, JSON on stdout.
// Exit codes: 0 success, 1 a check failed, 2 bad input.

#include <iostream>
#include <regex>
#include <string>

#include <CLI11.hpp>

#include "cm/battery.hpp"
#include "cm/errors.hpp"
#include "cm/io.hpp"
#include "cm/quadratic.hpp"
#include "cm/report.hpp"
#include "cm/zeta.hpp"

namespace {

using cm::Json;

struct FieldSelection {
    std::string battery;
    std::string field_file;

    std::vector<cm::BatteryField> resolve(const std::string& fallback) const {
        if (!field_file.empty()) {
            if (!battery.empty())
                throw cm::InputError("give either --battery or --field, not both");
            cm::CMField f = cm::read_field_file(field_file);
            return {cm::BatteryField{"file", cm::field_label(field_file, f), f}};
        }
        return cm::battery_fields(battery.empty() ? fallback : battery);
    }
};

void add_selection(CLI::App* cmd, FieldSelection& sel) {
    cmd->add_option("--battery", sel.battery, "built-in context: C2, C4, C2xC2, C2xC4, D4 or all");
    cmd->add_option("--field", sel.field_file, "JSON field file {\"group\", \"iota\", \"H\"}");
}

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::pair<cm::Integer, cm::Integer> parse_curve(const std::string& s) {
    static const std::regex re(R"(^\s*(-?\d+)\s*,\s*(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw cm::InputError("--curve expects a4,a6 as integers, got '" + s + "'");
    return {cm::Integer(m[1].str()), cm::Integer(m[2].str())};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with CM-types, Serre groups, Taniyama cocycles and CM zeta functions"};
    app.require_subcommand(1);

    FieldSelection enum_sel;
    auto* enumerate = app.add_subcommand("enumerate", "CM-types, reflex data, primitivity and Mumford-Tate ranks");
    add_selection(enumerate, enum_sel);

    FieldSelection check_sel;
    cm::CheckOptions check_opts;
    auto* check = app.add_subcommand("check", "run identity suites; exit 0 iff every instance passes");
    add_selection(check, check_sel);
    check->add_option("--suite", check_opts.suite, "serre, cocycle or all")
        ->check(CLI::IsMember({"serre", "cocycle", "all"}));
    check->add_option("--trials", check_opts.trials, "random w-systems per field")->check(CLI::Range(0, 100000));
    check->add_option("--seed", check_opts.seed, "seed for all random choices");
    check->add_flag("--inject-fault", check_opts.inject_fault)->group("");

    std::string curve = "-1,0";
    long zeta_d = -1, pmax = 1000, n_id = 1, n_conj = 0;
    std::string conductor;
    auto* zeta = app.add_subcommand("zeta", "compare point-count and Hecke Euler factors of a CM curve");
    zeta->add_option("--curve", curve, "a4,a6 for y^2 = x^3 + a4 x + a6");
    zeta->add_option("--d", zeta_d, "CM field Q(sqrt d)");
    zeta->add_option("--pmax", pmax, "largest prime")->check(CLI::Range(2L, 1000000L));
    zeta->add_option("--conductor", conductor, "primary convention modulus, gen:a,b[^k] or hnf:n,c,d");
    zeta->add_option("--n-id", n_id, "infinity type exponent at the identity");
    zeta->add_option("--n-conj", n_conj, "infinity type exponent at the conjugate");

    long rs_pmax = 200;
    auto* resscalars = app.add_subcommand("resscalars", "local factors of Res_{Q(i)/Q} of y^2 = x^3 + i x");
    resscalars->add_option("--pmax", rs_pmax, "largest prime")->check(CLI::Range(2L, 2000L));

    long rc_d = -1;
    std::string modulus = "gen:1,0";
    auto* rayclass = app.add_subcommand("rayclass", "ray class group of a class-number-one imaginary quadratic field");
    rayclass->add_option("--d", rc_d, "field Q(sqrt d)");
    rayclass->add_option("--modulus", modulus, "gen:a,b[^k] or hnf:n,c,d");

    FieldSelection transfer_sel;
    auto* transfer = app.add_subcommand("transfer", "transfer G -> H^ab on every element");
    add_selection(transfer, transfer_sel);

    FieldSelection serre_sel;
    auto* serre = app.add_subcommand("serre", "character lattice of the Serre group and its exact sequence");
    add_selection(serre, serre_sel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*enumerate) {
            Json out;
            out["command"] = "enumerate";
            Json fields = Json::array();
            for (const auto& f : enum_sel.resolve("all"))
                fields.push_back(cm::enumerate_report(f));
            out["fields"] = std::move(fields);
            emit(out);
            return 0;
        }
        if (*check) {
            check_opts.threads = cm::thread_budget();
            bool passed = false;
            emit(cm::check_report(check_sel.resolve("all"), check_opts, passed));
            return passed ? 0 : 1;
        }
        if (*zeta) {
            const auto [a4, a6] = parse_curve(curve);
            const cm::QuadField k(zeta_d);
            cm::PrimaryConvention conv = conductor.empty() ? cm::standard_convention(k)
                                                           : cm::PrimaryConvention{k, cm::parse_ideal_spec(k, conductor)};
            cm::HeckeCharacterSpec spec{conv, n_id, n_conj, {}};
            cm::ZetaReport r = cm::verify_cm_zeta(cm::make_curve(a4, a6), spec, pmax, cm::thread_budget());
            Json out = cm::zeta_report(r, pmax);
            out["curve"] = {{"a4", cm::to_json(a4)}, {"a6", cm::to_json(a6)}};
            out["character"] = {{"d", zeta_d},
                                {"conductor", cm::to_json(conv.conductor)},
                                {"infinity_type", {n_id, n_conj}}};
            emit(out);
            return r.mismatches == 0 ? 0 : 1;
        }
        if (*resscalars) {
            cm::ResScalarsReport r = cm::verify_res_scalars(cm::default_gaussian_curve(), rs_pmax);
            emit(cm::res_scalars_report(r, rs_pmax));
            return r.mismatches == 0 ? 0 : 1;
        }
        if (*rayclass) {
            const cm::QuadField k(rc_d);
            emit(cm::rayclass_report(cm::RayClassGroup(k, cm::parse_ideal_spec(k, modulus))));
            return 0;
        }
        if (*transfer || *serre) {
            const FieldSelection& sel = *transfer ? transfer_sel : serre_sel;
            Json out;
            out["command"] = *transfer ? "transfer" : "serre";
            Json fields = Json::array();
            for (const auto& f : sel.resolve("all"))
                fields.push_back(*transfer ? cm::transfer_report(f) : cm::serre_report(f));
            out["fields"] = std::move(fields);
            emit(out);
            return 0;
        }
    } catch (const cm::InternalInconsistency& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const cm::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
