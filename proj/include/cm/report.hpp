#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cm/battery.hpp"
#include "cm/check.hpp"
#include "cm/quadratic.hpp"
#include "cm/zeta.hpp"

namespace cm {

using Json = nlohmann::ordered_json;

Json to_json(const Integer& x);
Json to_json(const IntMatrix& m);
Json to_json(const CheckResult& c, const std::string& suite);
Json to_json(const QuadField& k, const QuadInt& x);
Json to_json(const QuadIdeal& x);
Json to_json(const EulerFactor& f);

/// Elements of a subgroup by name.
Json subgroup_json(const Subgroup& h);

/// CM-types with reflex data, primitivity and Mumford-Tate ranks.
Json enumerate_report(const BatteryField& f);

struct CheckOptions {
    std::string suite = "all"; // serre | cocycle | all
    int trials = 100;
    std::uint64_t seed = 0;
    bool inject_fault = false;
    int threads = 1;
};
/// Runs the requested suites on every field; the report contains no timing
/// and is assembled in field order, so it does not depend on `threads`.
Json check_report(const std::vector<BatteryField>& fields, const CheckOptions& options, bool& all_passed);

/// X*(S^E) basis, ranks and the exact-sequence data for one field.
Json serre_report(const BatteryField& f);
/// Transfer G -> H^ab on every element, with the abelian invariants of H.
Json transfer_report(const BatteryField& f);

Json zeta_report(const ZetaReport& r, long p_max);
Json res_scalars_report(const ResScalarsReport& r, long p_max);
Json rayclass_report(const RayClassGroup& g);

/// Reads CM_THREADS; falls back to the hardware concurrency, at least 1.
int thread_budget();

} // namespace cm
