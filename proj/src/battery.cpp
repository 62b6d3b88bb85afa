#include "cm/battery.hpp"

#include "cm/errors.hpp"

namespace cm {

namespace {

Subgroup sub(const GroupPtr& g, std::vector<Element> elems) { return Subgroup(g, std::move(elems)); }

} // namespace

const std::vector<std::string>& battery_names() {
    static const std::vector<std::string> names{"C2", "C4", "C2xC2", "C2xC4", "D4"};
    return names;
}

BatteryContext battery_context(const std::string& raw) {
    std::string name = raw;
    for (const char* times : {"\xc3\x97", "X"}) {
        for (auto pos = name.find(times); pos != std::string::npos; pos = name.find(times))
            name.replace(pos, std::string(times).size(), "x");
    }
    if (name == "C2") {
        GroupPtr g = cyclic_group(2);
        return {"C2", g, 1, {Subgroup::trivial(g)}};
    }
    if (name == "C4") {
        GroupPtr g = cyclic_group(4);
        return {"C4", g, 2, {Subgroup::trivial(g)}};
    }
    if (name == "C2xC2") {
        // (a, b) at 2a + b; iota = (1, 0).
        GroupPtr g = direct_product(*cyclic_group(2), *cyclic_group(2));
        return {"C2xC2", g, 2, {Subgroup::trivial(g), sub(g, {0, 1}), sub(g, {0, 3})}};
    }
    if (name == "C2xC4") {
        // (a, b) at 4a + b; iota = (1, 0).
        GroupPtr g = direct_product(*cyclic_group(2), *cyclic_group(4));
        return {"C2xC4", g, 4, {Subgroup::trivial(g), sub(g, {0, 2}), sub(g, {0, 6})}};
    }
    if (name == "D4") {
        // r^k s^j at k + 4j; iota = r^2 is the centre.
        GroupPtr g = dihedral_group(4);
        return {"D4", g, 2, {Subgroup::trivial(g), sub(g, {0, 4}), sub(g, {0, 5})}};
    }
    throw InputError("unknown battery context '" + raw + "'");
}

std::string field_label(const std::string& context, const NumberField& field) {
    const FiniteGroup& g = *field.group();
    std::string s = context + "/H={";
    bool first = true;
    for (Element h : field.fixing().elements()) {
        s += (first ? "" : ",") + g.name(h);
        first = false;
    }
    return s + "}";
}

std::vector<BatteryField> battery_fields(const std::string& name) {
    std::vector<BatteryField> out;
    if (name == "all") {
        for (const std::string& n : battery_names())
            for (BatteryField& f : battery_fields(n))
                out.push_back(std::move(f));
        return out;
    }
    BatteryContext ctx = battery_context(name);
    for (const Subgroup& h : ctx.subgroups) {
        CMField field(h, ctx.iota);
        out.push_back(BatteryField{ctx.name, field_label(ctx.name, field), field});
    }
    return out;
}

} // namespace cm
