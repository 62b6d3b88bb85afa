#include "cm/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cm/errors.hpp"

namespace cm {

using nlohmann::ordered_json;

namespace {

std::string location(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    // nlohmann reports the byte after the offending one.
    return "line " + std::to_string(line) + ", column " + std::to_string(col > 1 ? col - 1 : col);
}

std::string source_line(const std::string& text, std::size_t byte) {
    std::size_t start = text.rfind('\n', byte > 0 ? byte - 1 : 0);
    start = start == std::string::npos ? 0 : start + 1;
    if (byte > 0 && start > byte - 1)
        start = 0;
    std::size_t end = text.find('\n', start);
    return text.substr(start, end == std::string::npos ? std::string::npos : end - start);
}

template <typename T>
T get_field(const ordered_json& j, const char* key, const std::string& what) {
    if (!j.is_object() || !j.contains(key))
        throw InputError(what + ": missing key \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(what + ": key \"" + key + "\" has the wrong type");
    }
}

} // namespace

ordered_json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(origin + ": JSON syntax error at " + location(text, e.byte) + ": " +
                         source_line(text, e.byte));
    }
}

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str(), path);
}

GroupPtr group_from_json(const ordered_json& j) {
    const auto order = get_field<int>(j, "order", "group");
    auto table = get_field<std::vector<std::vector<int>>>(j, "table", "group");
    if (order <= 0 || static_cast<int>(table.size()) != order)
        throw InputError("group: \"order\" does not match the table");
    std::vector<std::string> names;
    if (j.contains("names"))
        names = get_field<std::vector<std::string>>(j, "names", "group");
    return make_group(std::move(table), std::move(names));
}

CMField field_from_json(const ordered_json& j, const std::string& base_dir) {
    if (!j.is_object() || !j.contains("group"))
        throw InputError("field: missing key \"group\"");
    GroupPtr g;
    const ordered_json& gj = j.at("group");
    if (gj.is_string()) {
        std::filesystem::path p(gj.get<std::string>());
        if (p.is_relative())
            p = std::filesystem::path(base_dir) / p;
        g = group_from_json(read_json_file(p.string()));
    } else {
        g = group_from_json(gj);
    }
    const auto iota = get_field<int>(j, "iota", "field");
    auto h = get_field<std::vector<int>>(j, "H", "field");
    for (int x : h)
        if (x < 0 || x >= g->order())
            throw InputError("field: element " + std::to_string(x) + " of H is out of range");
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    return CMField(Subgroup(g, std::move(h)), iota);
}

CMField read_field_file(const std::string& path) {
    return field_from_json(read_json_file(path), std::filesystem::path(path).parent_path().string());
}

} // namespace cm
