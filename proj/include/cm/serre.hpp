#pragma once

#include <cstddef>
#include <vector>

#include "cm/check.hpp"
#include "cm/cm_type.hpp"
#include "cm/int_matrix.hpp"

namespace cm {

/// Character lattice of a Q-torus split by the Galois context: a sublattice
/// of Z^n stable under integer action matrices, one per group element
/// (column convention, action[s*t] == action[s] * action[t]).
struct CharLattice {
    GroupPtr group;
    Lattice lattice;
    std::vector<IntMatrix> action;

    std::size_t ambient_rank() const { return lattice.ambient_rank(); }
    std::size_t rank() const { return lattice.rank(); }
    const IntMatrix& act(Element g) const { return action[static_cast<std::size_t>(g)]; }
    /// Action is a representation and the sublattice is stable.
    bool is_valid() const;
};

/// Integer matrix between ambient character spaces (target rows, source
/// columns) that maps source into target and commutes with the actions.
struct LatticeMap {
    CharLattice source;
    CharLattice target;
    IntMatrix matrix;

    bool maps_into_target() const;
    bool is_equivariant() const;
};

/// A cocharacter, given by its pairing with the ambient characters.
struct Cocharacter {
    CharLattice lattice;
    IntVector functional;

    Integer pair(const IntVector& character) const { return dot(functional, character); }
    /// (tau mu)(chi) = mu(tau^-1 chi).
    Cocharacter translate(Element tau) const;
    /// Equality of the restrictions to the sublattice.
    bool agrees_with(const Cocharacter& other) const;
};

/// Permutation matrix of g acting on the embeddings G/H by left translation.
IntMatrix left_translation_matrix(const NumberField& field, Element g);
/// Permutation matrix of [rho] -> [rho g]; requires g to normalize H.
IntMatrix right_translation_matrix(const NumberField& field, Element g);

/// X*(E^x) = Z^{Hom(E, C)} with the Galois action.
CharLattice full_character_lattice(const NumberField& field);
/// {chi : (tau - 1)(iota + 1) chi = 0 for all tau}.
CharLattice serre_character_lattice(const NumberField& field);

/// chi -> coefficient of the identity embedding.
Cocharacter mu_E(const NumberField& field);
/// -(iota + 1) mu^E, i.e. chi -> -(n_1 + n_iota).
Cocharacter weight(const NumberField& field);
/// Indicator functional of Phi on X*(K^x).
Cocharacter mu_phi(const CMType& phi);

/// X*(rho_Phi) : X*(K^x) -> X*(S^E), obtained by solving the equivariance
/// and evaluation equations over Z. E must be Galois and contain the reflex
/// field: NotGalois / NoSolution otherwise.
LatticeMap rho_phi(const CMType& phi, const NumberField& e);
/// rho_phi with E the top of the context (H trivial).
LatticeMap rho_phi(const CMType& phi);

/// X*(Nm_{E1/E2}) : X*(S^E2) -> X*(S^E1) for E1 containing E2.
LatticeMap norm_lattice_map(const NumberField& e1, const NumberField& e2);

/// Rank of the image of X*(rho_Phi): the dimension of the Mumford-Tate torus.
std::size_t mt_rank(const CMType& phi);

/// Exactness of 0 -> X*(S^E) -> X*(E^x) + Z -> X*(E_0^x) -> 0.
struct SerreSequenceReport {
    std::size_t rank_real = 0;   // X*(E_0^x)
    std::size_t rank_middle = 0; // X*(E^x x Q^x)
    std::size_t rank_serre = 0;  // X*(S^E)
    bool injective = false;
    bool exact_middle = false;
    bool surjective = false;
    IntMatrix to_middle;   // X*(can., w^E)
    IntMatrix from_middle; // X*((incl., Nm))

    bool exact() const { return injective && exact_middle && surjective; }
};
SerreSequenceReport check_serre_sequence(const CMField& field);

/// Nm_{E/Q} factors through S^E, and X*(-w^E o Nm) == X*(1 + iota) on X*(S^E).
struct NormFactorReport {
    bool norm_in_serre = false;
    bool identity_holds = false;
    bool ok() const { return norm_in_serre && identity_holds; }
};
NormFactorReport check_norm_through_serre(const NumberField& field);

/// The indicator vectors of all CM-types span X*(S^E) with index 1.
struct GenerationReport {
    Lattice generated;
    Lattice serre;
    bool equal = false;
};
GenerationReport check_generation(const CMField& field);

/// Serre-pair axioms for (T, mu): iota-central action, Q-rational weight.
/// Throws NotSerrePair naming the failed axiom.
void require_serre_pair(const CharLattice& t, const IntVector& mu, Element iota);

/// N(T, mu) on characters: chi -> sum_sigma mu(sigma^-1 chi) [sigma], a map
/// X*(T) -> X*(S^E) for E (Galois) containing the field of definition of mu.
LatticeMap reciprocity_cocharacter(const CharLattice& t, const IntVector& mu, const NumberField& e);

/// Identity suite on the character-lattice side for one CM field: rank,
/// equivariance, translation compatibilities, norm triangles, induction.
std::vector<CheckResult> serre_identity_suite(const CMField& field);

} // namespace cm
