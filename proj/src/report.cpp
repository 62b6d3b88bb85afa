#include "cm/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>

#include "cm/cocycle.hpp"
#include "cm/serre.hpp"

namespace cm {

Json to_json(const Integer& x) {
    if (x.fits_slong_p())
        return Json(x.get_si());
    return Json(x.get_str());
}

Json to_json(const IntMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const CheckResult& c, const std::string& suite) {
    Json j;
    j["suite"] = suite;
    j["name"] = c.name;
    j["statement"] = c.statement;
    j["passed"] = c.passed;
    j["failed"] = c.failed;
    j["ok"] = c.ok();
    j["witnesses"] = c.witnesses;
    return j;
}

Json to_json(const QuadField& k, const QuadInt& x) {
    Json j;
    j["a"] = to_json(x.a);
    j["b"] = to_json(x.b);
    j["text"] = to_string(k, x);
    return j;
}

Json to_json(const QuadIdeal& x) {
    Json j;
    j["n"] = to_json(x.n);
    j["c"] = to_json(x.c);
    j["d"] = to_json(x.d);
    return j;
}

Json to_json(const EulerFactor& f) {
    Json j = Json::array();
    for (const Integer& c : f)
        j.push_back(to_json(c));
    return j;
}

Json subgroup_json(const Subgroup& h) {
    Json j = Json::array();
    for (Element x : h.elements())
        j.push_back(h.group().name(x));
    return j;
}

namespace {

Json field_header(const BatteryField& f) {
    Json j;
    j["field"] = f.label;
    j["context"] = f.context;
    j["order"] = f.field.group()->order();
    j["iota"] = f.field.group()->name(f.field.iota());
    j["H"] = subgroup_json(f.field.fixing());
    j["degree"] = f.field.degree();
    return j;
}

Json coset_names(const CMField& field, const std::vector<int>& labels) {
    Json j = Json::array();
    for (int c : labels)
        j.push_back(field.group()->name(field.embeddings().representative(c)));
    return j;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the first
/// failure in index order.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), n));
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back(run);
        for (auto& th : pool)
            th.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace

Json enumerate_report(const BatteryField& f) {
    Json j = field_header(f);
    j["embeddings"] = coset_names(f.field, [&] {
        std::vector<int> all;
        for (int c = 0; c < f.field.degree(); ++c)
            all.push_back(c);
        return all;
    }());
    Json types = Json::array();
    for (const CMType& phi : enumerate_cm_types(f.field)) {
        Json t;
        t["phi"] = phi.phi;
        t["phi_representatives"] = coset_names(f.field, phi.phi);
        t["primitive"] = is_primitive(phi);
        const CMType psi = reflex_type(phi);
        t["reflex_field"] = {{"H", subgroup_json(psi.field.fixing())}, {"degree", psi.field.degree()}};
        t["reflex_type"] = psi.phi;
        t["reflex_type_representatives"] = coset_names(psi.field, psi.phi);
        t["mt_rank"] = mt_rank(phi);
        types.push_back(std::move(t));
    }
    j["count"] = types.size();
    j["types"] = std::move(types);
    return j;
}

Json check_report(const std::vector<BatteryField>& fields, const CheckOptions& options, bool& all_passed) {
    const bool serre = options.suite == "serre" || options.suite == "all";
    const bool cocycle = options.suite == "cocycle" || options.suite == "all";
    std::vector<Json> per_field(fields.size());
    parallel_for(fields.size(), options.threads, [&](std::size_t i) {
        Json j = field_header(fields[i]);
        Json checks = Json::array();
        if (serre)
            for (const CheckResult& c : serre_identity_suite(fields[i].field))
                checks.push_back(to_json(c, "serre"));
        if (cocycle) {
            CocycleSuiteOptions co{options.trials, options.seed, options.inject_fault};
            for (const CheckResult& c : cocycle_suite(fields[i].field, co))
                checks.push_back(to_json(c, "cocycle"));
        }
        j["checks"] = std::move(checks);
        per_field[i] = std::move(j);
    });

    long passed = 0, failed = 0, checks = 0, failing_checks = 0;
    Json out;
    out["command"] = "check";
    out["suite"] = options.suite;
    out["trials"] = options.trials;
    out["seed"] = options.seed;
    if (options.inject_fault)
        out["fault_injected"] = true;
    Json list = Json::array();
    for (Json& j : per_field) {
        for (const Json& c : j["checks"]) {
            ++checks;
            passed += c["passed"].get<long>();
            failed += c["failed"].get<long>();
            failing_checks += c["ok"].get<bool>() ? 0 : 1;
        }
        list.push_back(std::move(j));
    }
    out["fields"] = std::move(list);
    all_passed = failed == 0;
    out["summary"] = {{"fields", fields.size()},   {"checks", checks},         {"failing_checks", failing_checks},
                      {"instances_passed", passed}, {"instances_failed", failed}, {"pass", all_passed}};
    return out;
}

Json serre_report(const BatteryField& f) {
    Json j = field_header(f);
    const CharLattice s = serre_character_lattice(f.field);
    j["rank"] = s.rank();
    j["basis"] = to_json(s.lattice.basis());
    const SerreSequenceReport seq = check_serre_sequence(f.field);
    j["sequence"] = {{"ranks", {seq.rank_real, seq.rank_middle, seq.rank_serre}},
                     {"injective", seq.injective},
                     {"exact_middle", seq.exact_middle},
                     {"surjective", seq.surjective},
                     {"to_middle", to_json(seq.to_middle)},
                     {"from_middle", to_json(seq.from_middle)}};
    j["mu_E"] = to_json(IntMatrix::from_rows({mu_E(f.field).functional}, s.ambient_rank()))[0];
    j["w_E"] = to_json(IntMatrix::from_rows({weight(f.field).functional}, s.ambient_rank()))[0];
    const GenerationReport gen = check_generation(f.field);
    j["cm_types_generate"] = gen.equal;
    return j;
}

Json transfer_report(const BatteryField& f) {
    Json j = field_header(f);
    const AbelianQuotient hab(f.field.fixing());
    j["H_ab_invariants"] = hab.invariants();
    Json values = Json::array();
    const FiniteGroup& g = *f.field.group();
    for (int x = 0; x < g.order(); ++x)
        values.push_back({{"g", g.name(x)}, {"transfer", transfer(hab, x)}});
    j["values"] = std::move(values);
    return j;
}

Json zeta_report(const ZetaReport& r, long p_max) {
    Json j;
    j["command"] = "zeta";
    j["pmax"] = p_max;
    Json rows = Json::array();
    for (const ZetaPrimeRow& row : r.rows)
        rows.push_back({{"p", row.p},
                        {"splitting", row.splitting},
                        {"a_p_count", row.a_p_count},
                        {"factor_count", to_json(row.factor_count)},
                        {"factor_hecke", to_json(row.factor_hecke)},
                        {"match", row.match}});
    j["primes"] = std::move(rows);
    Json excluded = Json::array();
    for (const ExcludedPrime& e : r.excluded)
        excluded.push_back({{"p", e.p}, {"reason", e.reason}});
    j["excluded"] = std::move(excluded);
    j["summary"] = {{"checked", r.checked},
                    {"mismatches", r.mismatches},
                    {"supersingular_iff_inert", r.supersingular_iff_inert},
                    {"runtime", r.runtime_us}};
    return j;
}

Json res_scalars_report(const ResScalarsReport& r, long p_max) {
    Json j;
    j["command"] = "resscalars";
    j["pmax"] = p_max;
    Json rows = Json::array();
    for (const ResScalarsRow& row : r.rows)
        rows.push_back({{"p", row.p},
                        {"splitting", row.splitting},
                        {"count_Fp", row.n1},
                        {"count_Fp2", row.n2},
                        {"factor_direct", to_json(row.direct)},
                        {"factor_induced", to_json(row.induced)},
                        {"match", row.match}});
    j["primes"] = std::move(rows);
    Json excluded = Json::array();
    for (const ExcludedPrime& e : r.excluded)
        excluded.push_back({{"p", e.p}, {"reason", e.reason}});
    j["excluded"] = std::move(excluded);
    j["summary"] = {{"checked", r.checked}, {"mismatches", r.mismatches}};
    return j;
}

Json rayclass_report(const RayClassGroup& g) {
    Json j;
    j["command"] = "rayclass";
    j["d"] = g.field().d();
    j["modulus"] = to_json(g.modulus());
    j["modulus_norm"] = to_json(g.modulus().norm());
    j["residue_units"] = g.residue_units();
    j["unit_image"] = g.unit_image();
    j["invariants"] = g.invariants();
    j["order"] = g.order();
    j["trivial"] = g.is_trivial();
    return j;
}

int thread_budget() {
    if (const char* env = std::getenv("CM_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1)
            return static_cast<int>(std::min<long>(v, 256));
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

} // namespace cm
