#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cm {

/// Index of a group element in its Cayley table.
using Element = int;

/// A finite group given extensionally by its Cayley table.
///
/// Construction validates identity, inverses and associativity (exhaustively
/// up to order 64, on a deterministic sample of triples above that).
class FiniteGroup {
public:
    static std::shared_ptr<const FiniteGroup> make(std::vector<std::vector<int>> table,
                                                   std::vector<std::string> names = {});

    int order() const { return order_; }
    Element identity() const { return identity_; }
    Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a * order_ + b)]; }
    Element inv(Element a) const { return inverse_[static_cast<std::size_t>(a)]; }
    Element conj(Element g, Element x) const { return mul(mul(g, x), inv(g)); } // g x g^-1
    Element pow(Element a, long n) const;
    int element_order(Element a) const;
    bool is_abelian() const;
    const std::vector<std::string>& names() const { return names_; }
    std::string name(Element a) const;
    std::vector<std::vector<int>> table() const;

private:
    FiniteGroup() = default;

    int order_ = 0;
    Element identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Validates a Cayley table; throws NotAGroup with the offending witness.
GroupPtr make_group(std::vector<std::vector<int>> table, std::vector<std::string> names = {});

GroupPtr cyclic_group(int n);
/// Direct product with element (a, b) at index a * |B| + b.
GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Dihedral group of order 2n; r^k s^j at index k + n*j.
GroupPtr dihedral_group(int n);

/// A subgroup of a finite group, stored as the sorted list of its elements.
class Subgroup {
public:
    /// Throws NotASubgroup if `elements` is not closed or lacks the identity.
    Subgroup(GroupPtr parent, std::vector<Element> elements);

    static Subgroup whole(GroupPtr parent);
    static Subgroup trivial(GroupPtr parent);
    /// Smallest subgroup containing `generators`.
    static Subgroup generated(GroupPtr parent, std::span<const Element> generators);

    const GroupPtr& parent() const { return parent_; }
    const FiniteGroup& group() const { return *parent_; }
    const std::vector<Element>& elements() const { return elements_; }
    int order() const { return static_cast<int>(elements_.size()); }
    int index() const { return parent_->order() / order(); }
    bool contains(Element g) const { return member_[static_cast<std::size_t>(g)]; }
    bool contains(const Subgroup& other) const;
    bool is_normal() const;
    bool is_trivial() const { return order() == 1; }
    Subgroup conjugate(Element g) const; // g H g^-1
    Subgroup intersect(const Subgroup& other) const;

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.parent_ == b.parent_ && a.elements_ == b.elements_;
    }

private:
    GroupPtr parent_;
    std::vector<Element> elements_;
    std::vector<bool> member_;
};

/// Normalizer N_G(H).
Subgroup normalizer(const Subgroup& h);
Subgroup commutator_subgroup(const Subgroup& h);
/// All subgroups K with H <= K <= G, sorted by (order, elements).
std::vector<Subgroup> subgroups_containing(const Subgroup& h);

/// Left cosets gH of H in its parent, labelled canonically: ordered by their
/// minimal element index.
class CosetSpace {
public:
    explicit CosetSpace(Subgroup h);

    const Subgroup& subgroup() const { return h_; }
    int size() const { return static_cast<int>(cosets_.size()); }
    const std::vector<Element>& coset(int label) const { return cosets_[static_cast<std::size_t>(label)]; }
    Element representative(int label) const { return cosets_[static_cast<std::size_t>(label)].front(); }
    int label_of(Element g) const { return label_[static_cast<std::size_t>(g)]; }
    /// Label of g * (coset `label`).
    int act(Element g, int label) const;

private:
    Subgroup h_;
    std::vector<std::vector<Element>> cosets_;
    std::vector<int> label_;
};

/// H / [H, H] in Smith-normal-form coordinates: a value is a vector with one
/// entry per invariant factor d_i > 1, reduced into [0, d_i).
class AbelianQuotient {
public:
    using Value = std::vector<long>;

    explicit AbelianQuotient(Subgroup source);

    const Subgroup& source() const { return source_; }
    const std::vector<long>& invariants() const { return invariants_; }
    long order() const;
    bool is_trivial() const { return invariants_.empty(); }

    /// Projection of an element of the source subgroup.
    const Value& project(Element h) const;
    Value zero() const { return Value(invariants_.size(), 0); }
    Value add(const Value& a, const Value& b) const;
    Value negate(const Value& a) const;
    Value scale(const Value& a, long n) const;
    const Subgroup& kernel() const { return commutator_; }

private:
    Subgroup source_;
    Subgroup commutator_;
    std::vector<long> invariants_;
    std::vector<Value> projection_; // indexed by parent element; empty outside the source
};

/// Product over left-coset representatives of `outer` modulo `inner`:
/// prod_i t_{j(i)}^-1 g t_i, taken in the order of `reps`. The product is a
/// well-defined element of inner/[inner, inner]; the raw element depends on
/// the representative choice.
Element transfer_product(const Subgroup& outer, const Subgroup& inner, Element g,
                         std::span<const Element> reps);

/// Canonical representatives (minimal element of each left coset of `inner`
/// inside `outer`).
std::vector<Element> canonical_transfer_reps(const Subgroup& outer, const Subgroup& inner);

/// The transfer G^ab -> H^ab evaluated at g, in H^ab coordinates.
AbelianQuotient::Value transfer(const AbelianQuotient& hab, Element g);
AbelianQuotient::Value transfer(const AbelianQuotient& hab, Element g, std::span<const Element> reps);

} // namespace cm
