#pragma once

#include <string>
#include <vector>

#include "cm/cm_type.hpp"
#include "cm/group.hpp"

namespace cm {

/// A built-in Galois context: a group, complex conjugation, and the CM
/// subgroups H of interest.
struct BatteryContext {
    std::string name;
    GroupPtr group;
    Element iota = 0;
    std::vector<Subgroup> subgroups;
};

struct BatteryField {
    std::string context;
    std::string label; // e.g. "D4/H={e,s}"
    CMField field;
};

/// C2, C4, C2xC2, C2xC4, D4.
const std::vector<std::string>& battery_names();
/// Throws InputError on unknown names. Accepts "C2xC2" and "C2×C2" spellings.
BatteryContext battery_context(const std::string& name);
/// All CM fields of one context, or of every context for "all".
std::vector<BatteryField> battery_fields(const std::string& name);
/// Human-readable label for a field inside its context.
std::string field_label(const std::string& context, const NumberField& field);

} // namespace cm
