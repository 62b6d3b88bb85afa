#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cm/check.hpp"
#include "cm/cm_type.hpp"
#include "cm/group.hpp"

namespace cm {

/// Coset representatives w_rho in rho, one per embedding of K, with
/// w_{iota rho} = iota w_rho.
class WSystem {
public:
    /// Validates both constraints; throws InputError naming the bad coset.
    WSystem(CMField field, std::vector<Element> reps);
    /// No validation at all. Used only to build deliberately broken systems
    /// for negative controls.
    static WSystem unchecked(CMField field, std::vector<Element> reps);

    const CMField& field() const { return field_; }
    Element rep(int label) const { return reps_[static_cast<std::size_t>(label)]; }
    const std::vector<Element>& reps() const { return reps_; }

private:
    struct Unchecked {};
    WSystem(CMField field, std::vector<Element> reps, Unchecked);

    CMField field_;
    std::vector<Element> reps_;
};

/// Without a seed: minimal coset elements on the lower label of each
/// conjugate pair. With a seed: uniformly random elements there. The other
/// half is always filled by w_{iota rho} = iota w_rho.
WSystem choose_w_system(const CMField& field, std::optional<std::uint64_t> seed = std::nullopt);

/// Replaces w_{iota rho} by another element of its coset for every pair where
/// H is nontrivial, so w_{iota rho} = iota w_rho fails.
WSystem break_iota_compatibility(const WSystem& w, std::uint64_t seed);

/// F_Phi(tau) = sum over phi in Phi of [w_{tau phi}^-1 tau w_phi] in H^ab.
/// Throws FactorNotInH if a factor leaves H (corrupted w-system).
AbelianQuotient::Value F_phi(const CMType& phi, Element tau, const WSystem& w, const AbelianQuotient& hab);
/// The same product taken in the group in the given order of Phi's labels,
/// then projected.
AbelianQuotient::Value F_phi_ordered(const CMType& phi, Element tau, const WSystem& w, const AbelianQuotient& hab,
                                     const std::vector<int>& order);

/// F_Phi(tau) agrees for every tau across `trials` seeded w-systems.
/// `break_systems` runs the negative control on broken systems instead.
CheckResult check_w_independence(const CMField& field, int trials, std::uint64_t seed, bool break_systems = false);
/// F_Phi(sigma tau) = F_{tau Phi}(sigma) + F_Phi(tau), all Phi, sigma, tau.
CheckResult check_cocycle_law(const CMField& field, const WSystem& w);
/// F_Phi(tau) + F_{iota Phi}(tau) = Ver(tau), all Phi, tau.
CheckResult check_transfer_identity(const CMField& field, const WSystem& w);
/// The product over Phi does not depend on its order, `trials` shuffles.
CheckResult check_order_independence(const CMField& field, const WSystem& w, int trials, std::uint64_t seed);

/// One Stab(Phi)-orbit of Phi with its base point sigma_j (minimal element
/// of the orbit's minimal coset) and the subgroup S_j = S cap sigma_j H sigma_j^-1.
struct ReflexOrbit {
    std::vector<int> labels;
    Element base = 0;
    Subgroup local;
};
std::vector<ReflexOrbit> reflex_orbits(const CMType& phi);

/// Partial sum of F_Phi(tau) over one orbit.
AbelianQuotient::Value orbit_partial(const CMType& phi, const ReflexOrbit& orbit, Element tau, const WSystem& w,
                                     const AbelianQuotient& hab);
/// sigma_j^-1 Ver_{S -> S_j}(tau) sigma_j projected to H^ab, with transfer
/// representatives s_phi in S satisfying s_phi sigma_j H = phi (one per coset
/// in the orbit, in the orbit's label order).
AbelianQuotient::Value orbit_transfer(const CMType& phi, const ReflexOrbit& orbit, Element tau,
                                      const std::vector<Element>& reps, const AbelianQuotient& hab);
/// Canonical (minimal) choice of the s_phi above.
std::vector<Element> orbit_transfer_reps(const CMType& phi, const ReflexOrbit& orbit);

/// For tau in Stab(Phi): each orbit partial equals its conjugated transfer,
/// and the partials sum to F_Phi(tau). Transfer representatives are taken
/// canonically and from `trials` seeded random choices.
CheckResult check_reflex_compatibility(const CMType& phi, const WSystem& w, int trials, std::uint64_t seed);

struct CocycleSuiteOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    bool inject_fault = false;
};
/// All cocycle identities for one CM field.
std::vector<CheckResult> cocycle_suite(const CMField& field, const CocycleSuiteOptions& options);

} // namespace cm
