#include "cm/cm_type.hpp"

#include <algorithm>
#include <string>

#include "cm/errors.hpp"

namespace cm {

NumberField::NumberField(Subgroup fixing, Element iota)
    : fixing_(std::move(fixing)), iota_(iota), cosets_(std::make_shared<const CosetSpace>(fixing_)) {
    const FiniteGroup& g = *group();
    if (iota < 0 || iota >= g.order())
        throw NotACMField("iota out of range");
    if (g.mul(iota, iota) != g.identity())
        throw NotACMField("iota is not an involution");
    for (int x = 0; x < g.order(); ++x)
        if (g.mul(x, iota) != g.mul(iota, x))
            throw NotACMField("iota does not commute with element " + std::to_string(x));
}

CMField::CMField(Subgroup fixing, Element iota) : NumberField(std::move(fixing), iota) {
    if (iota == group()->identity())
        throw NotACMField("iota is the identity");
    if (this->fixing().contains(iota))
        throw NotACMField("iota lies in H, so the field is totally real");
}

bool CMType::contains(int label) const { return std::binary_search(phi.begin(), phi.end(), label); }

std::vector<Element> CMType::elements() const {
    std::vector<Element> out;
    for (int c : phi) {
        const auto& coset = field.embeddings().coset(c);
        out.insert(out.end(), coset.begin(), coset.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

CMType validate_cm_type(const CMField& field, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    const int n = field.degree();
    for (int c : subset)
        if (c < 0 || c >= n)
            throw NotACMType("coset label " + std::to_string(c) + " out of range");
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int c : subset)
        in[static_cast<std::size_t>(c)] = true;
    for (int c : subset)
        if (in[static_cast<std::size_t>(field.conjugate_embedding(c))])
            throw NotACMType("coset " + std::to_string(c) + " and its conjugate " +
                             std::to_string(field.conjugate_embedding(c)) + " both lie in the set");
    for (int c = 0; c < n; ++c)
        if (!in[static_cast<std::size_t>(c)] && !in[static_cast<std::size_t>(field.conjugate_embedding(c))])
            throw NotACMType("neither coset " + std::to_string(c) + " nor its conjugate lies in the set");
    return CMType{field, std::move(subset)};
}

std::vector<CMType> enumerate_cm_types(const CMField& field) {
    // One free choice per conjugate pair {rho, iota rho}.
    std::vector<int> pair_min;
    for (int c = 0; c < field.degree(); ++c)
        if (c < field.conjugate_embedding(c))
            pair_min.push_back(c);
    const std::size_t g = pair_min.size();
    std::vector<CMType> out;
    for (unsigned long mask = 0; mask < (1UL << g); ++mask) {
        std::vector<int> subset;
        for (std::size_t i = 0; i < g; ++i) {
            int c = pair_min[i];
            subset.push_back((mask >> i) & 1UL ? field.conjugate_embedding(c) : c);
        }
        out.push_back(validate_cm_type(field, std::move(subset)));
    }
    std::sort(out.begin(), out.end(), [](const CMType& a, const CMType& b) { return a.phi < b.phi; });
    return out;
}

CMType translate_left(Element tau, const CMType& phi) {
    std::vector<int> out;
    for (int c : phi.phi)
        out.push_back(phi.field.embeddings().act(tau, c));
    return validate_cm_type(phi.field, std::move(out));
}

CMType translate_right(Element sigma, const CMType& phi) {
    const FiniteGroup& g = *phi.field.group();
    if (!normalizer(phi.field.fixing()).contains(sigma))
        throw NotAnAutomorphismOfK("element " + std::to_string(sigma) + " does not normalize H");
    const CosetSpace& cs = phi.field.embeddings();
    std::vector<int> out;
    for (int c : phi.phi)
        out.push_back(cs.label_of(g.mul(cs.representative(c), sigma)));
    return validate_cm_type(phi.field, std::move(out));
}

Subgroup stabilizer(const CMType& phi) {
    const FiniteGroup& g = *phi.field.group();
    std::vector<Element> s;
    for (int x = 0; x < g.order(); ++x) {
        bool fixes = std::all_of(phi.phi.begin(), phi.phi.end(),
                                 [&](int c) { return phi.contains(phi.field.embeddings().act(x, c)); });
        if (fixes)
            s.push_back(x);
    }
    return Subgroup(phi.field.group(), std::move(s));
}

CMField reflex_field(const CMType& phi) {
    Subgroup s = stabilizer(phi);
    if (s.contains(phi.field.iota()))
        throw InternalInconsistency("stabilizer of a CM-type contains iota");
    return CMField(std::move(s), phi.field.iota());
}

CMType reflex_type(const CMType& phi) {
    const FiniteGroup& g = *phi.field.group();
    CMField e = reflex_field(phi);
    // The set H * Phi^-1 is the inverse of the union of the cosets in Phi; it
    // is a union of cosets psi * Stab(Phi).
    std::vector<bool> in_x(static_cast<std::size_t>(g.order()), false);
    for (Element x : phi.elements())
        in_x[static_cast<std::size_t>(g.inv(x))] = true;
    std::vector<int> psi;
    for (int x = 0; x < g.order(); ++x)
        if (in_x[static_cast<std::size_t>(x)])
            psi.push_back(e.embeddings().label_of(x));
    std::sort(psi.begin(), psi.end());
    psi.erase(std::unique(psi.begin(), psi.end()), psi.end());
    for (int c : psi)
        for (Element y : e.embeddings().coset(c))
            if (!in_x[static_cast<std::size_t>(y)])
                throw InternalInconsistency("H Phi^-1 is not a union of cosets of the stabilizer");
    return validate_cm_type(e, std::move(psi));
}

namespace {

void require_nested(const Subgroup& small_h, const Subgroup& big_h) {
    if (!big_h.contains(small_h))
        throw NotNested("fixing subgroups are not nested");
}

} // namespace

CMType induce(const CMField& big, const CMType& small) {
    require_nested(big.fixing(), small.field.fixing());
    if (big.iota() != small.field.iota())
        throw NotNested("fields use different complex conjugations");
    const CosetSpace& cs = big.embeddings();
    std::vector<int> out;
    for (int c = 0; c < cs.size(); ++c)
        if (small.contains(small.field.embeddings().label_of(cs.representative(c))))
            out.push_back(c);
    return validate_cm_type(big, std::move(out));
}

std::optional<CMType> restricts_to(const CMType& phi, const CMField& sub) {
    require_nested(phi.field.fixing(), sub.fixing());
    const CosetSpace& cs = phi.field.embeddings();
    std::vector<int> image;
    for (int c : phi.phi)
        image.push_back(sub.embeddings().label_of(cs.representative(c)));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (static_cast<int>(image.size()) != sub.half_degree())
        return std::nullopt;
    for (int c : image)
        if (std::binary_search(image.begin(), image.end(), sub.conjugate_embedding(c)))
            return std::nullopt;
    CMType candidate = validate_cm_type(sub, std::move(image));
    if (!(induce(phi.field, candidate) == phi))
        return std::nullopt;
    return candidate;
}

std::vector<CMField> cm_subfields(const CMField& field) {
    std::vector<CMField> out;
    for (const Subgroup& k : subgroups_containing(field.fixing()))
        if (!k.contains(field.iota()))
            out.emplace_back(k, field.iota());
    return out;
}

bool is_primitive(const CMType& phi) {
    for (const CMField& sub : cm_subfields(phi.field)) {
        if (sub.fixing() == phi.field.fixing())
            continue;
        if (restricts_to(phi, sub))
            return false;
    }
    return true;
}

} // namespace cm
