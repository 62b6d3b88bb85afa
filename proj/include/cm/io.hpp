#pragma once

#include <string>

#include <json.hpp>

#include "cm/cm_type.hpp"
#include "cm/group.hpp"

namespace cm {

/// Parses JSON text; syntax errors become InputError with line and column.
nlohmann::ordered_json parse_json_text(const std::string& text, const std::string& origin);
nlohmann::ordered_json read_json_file(const std::string& path);

/// {"order": n, "table": [[...]], "names": [...]} (names optional).
GroupPtr group_from_json(const nlohmann::ordered_json& j);

/// {"group": <group object or path>, "iota": e, "H": [elements]}. A relative
/// group path is resolved against `base_dir`.
CMField field_from_json(const nlohmann::ordered_json& j, const std::string& base_dir);
CMField read_field_file(const std::string& path);

} // namespace cm
