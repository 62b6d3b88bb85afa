#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "cm/group.hpp"

namespace cm {

/// A number field inside a fixed finite Galois context: K = L^H where
/// G = Gal(L/Q), together with complex conjugation `iota` in G. Embeddings
/// of K correspond to the left cosets G/H, labelled by CosetSpace.
class NumberField {
public:
    /// `iota` must be central with iota^2 = 1. It may be the identity
    /// (L totally real) or lie in H (K totally real).
    NumberField(Subgroup fixing, Element iota);

    const GroupPtr& group() const { return fixing_.parent(); }
    const Subgroup& fixing() const { return fixing_; }
    Element iota() const { return iota_; }
    const CosetSpace& embeddings() const { return *cosets_; }
    int degree() const { return cosets_->size(); }
    bool is_cm() const { return iota_ != group()->identity() && !fixing_.contains(iota_); }
    bool is_galois() const { return fixing_.is_normal(); }

    int identity_embedding() const { return cosets_->label_of(group()->identity()); }
    int conjugate_embedding(int label) const { return cosets_->act(iota_, label); }

    friend bool operator==(const NumberField& a, const NumberField& b) {
        return a.iota_ == b.iota_ && a.fixing_ == b.fixing_;
    }

private:
    Subgroup fixing_;
    Element iota_;
    std::shared_ptr<const CosetSpace> cosets_;
};

/// A CM field: iota central of order two and not in H.
class CMField : public NumberField {
public:
    /// Throws NotACMField when an invariant fails.
    CMField(Subgroup fixing, Element iota);

    int half_degree() const { return degree() / 2; }
};

/// Subset Phi of the embeddings with Phi and iota*Phi partitioning G/H.
struct CMType {
    CMField field;
    std::vector<int> phi; // sorted coset labels

    bool contains(int label) const;
    /// Union of the cosets in Phi, as sorted group elements.
    std::vector<Element> elements() const;

    friend bool operator==(const CMType& a, const CMType& b) {
        return a.field == b.field && a.phi == b.phi;
    }
};

/// Throws NotACMType naming a witness coset when the subset is invalid.
CMType validate_cm_type(const CMField& field, std::vector<int> subset);
/// All 2^g CM-types, in lexicographic order of their label sets.
std::vector<CMType> enumerate_cm_types(const CMField& field);

/// tau * Phi.
CMType translate_left(Element tau, const CMType& phi);
/// Phi * sigma for sigma normalizing H; throws NotAnAutomorphismOfK otherwise.
CMType translate_right(Element sigma, const CMType& phi);

/// {g in G : g Phi = Phi}.
Subgroup stabilizer(const CMType& phi);
CMField reflex_field(const CMType& phi);
CMType reflex_type(const CMType& phi);

/// The preimage of `small` under G/H_big -> G/H_small. Requires H_big <= H_small.
CMType induce(const CMField& big, const CMType& small);
/// The type on `sub` that `phi` is induced from, if any. Throws NotNested
/// unless H_phi <= H_sub.
std::optional<CMType> restricts_to(const CMType& phi, const CMField& sub);
/// True iff phi is induced from no proper CM subfield.
bool is_primitive(const CMType& phi);
/// CM subfields of K (subgroups H' >= H with iota not in H'), K itself first.
std::vector<CMField> cm_subfields(const CMField& field);

} // namespace cm
