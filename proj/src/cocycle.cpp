#include "cm/cocycle.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <string>

#include "cm/errors.hpp"

namespace cm {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

std::string labels_str(const std::vector<int>& v) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << '}';
    return os.str();
}

std::string value_str(const AbelianQuotient::Value& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

Element factor(const CMType& phi, Element tau, const WSystem& w, int label) {
    const FiniteGroup& g = *phi.field.group();
    const int moved = phi.field.embeddings().act(tau, label);
    Element f = g.mul(g.mul(g.inv(w.rep(moved)), tau), w.rep(label));
    if (!phi.field.fixing().contains(f))
        throw FactorNotInH("w_{tau phi}^-1 tau w_phi = " + g.name(f) + " is not in H (phi = " +
                           std::to_string(label) + ", tau = " + g.name(tau) + ")");
    return f;
}

} // namespace

WSystem::WSystem(CMField field, std::vector<Element> reps, Unchecked)
    : field_(std::move(field)), reps_(std::move(reps)) {}

WSystem WSystem::unchecked(CMField field, std::vector<Element> reps) {
    return WSystem(std::move(field), std::move(reps), Unchecked{});
}

WSystem::WSystem(CMField field, std::vector<Element> reps) : field_(std::move(field)), reps_(std::move(reps)) {
    const CosetSpace& cs = field_.embeddings();
    const FiniteGroup& g = *field_.group();
    if (static_cast<int>(reps_.size()) != cs.size())
        throw InputError("w-system needs one element per embedding");
    for (int c = 0; c < cs.size(); ++c) {
        Element w = reps_[static_cast<std::size_t>(c)];
        if (w < 0 || w >= g.order() || cs.label_of(w) != c)
            throw InputError("w-system: element for coset " + std::to_string(c) + " lies outside it");
        if (rep(field_.conjugate_embedding(c)) != g.mul(field_.iota(), w))
            throw InputError("w-system: w_{iota rho} != iota w_rho for coset " + std::to_string(c));
    }
}

WSystem choose_w_system(const CMField& field, std::optional<std::uint64_t> seed) {
    const CosetSpace& cs = field.embeddings();
    const FiniteGroup& g = *field.group();
    std::vector<Element> reps(static_cast<std::size_t>(cs.size()), -1);
    std::mt19937_64 rng = make_rng(seed.value_or(0), 0x77);
    for (int c = 0; c < cs.size(); ++c) {
        const int cc = field.conjugate_embedding(c);
        if (cc < c)
            continue;
        const auto& coset = cs.coset(c);
        Element w = seed ? coset[static_cast<std::size_t>(rng() % coset.size())] : coset.front();
        reps[static_cast<std::size_t>(c)] = w;
        reps[static_cast<std::size_t>(cc)] = g.mul(field.iota(), w);
    }
    return WSystem(field, std::move(reps));
}

WSystem break_iota_compatibility(const WSystem& w, std::uint64_t seed) {
    const CMField& field = w.field();
    const CosetSpace& cs = field.embeddings();
    std::vector<Element> reps = w.reps();
    std::mt19937_64 rng = make_rng(seed, 0xbad);
    for (int c = 0; c < cs.size(); ++c) {
        const int cc = field.conjugate_embedding(c);
        if (cc < c)
            continue;
        std::vector<Element> others;
        for (Element x : cs.coset(cc))
            if (x != reps[static_cast<std::size_t>(cc)])
                others.push_back(x);
        if (!others.empty())
            reps[static_cast<std::size_t>(cc)] = others[static_cast<std::size_t>(rng() % others.size())];
    }
    return WSystem::unchecked(field, std::move(reps));
}

AbelianQuotient::Value F_phi(const CMType& phi, Element tau, const WSystem& w, const AbelianQuotient& hab) {
    return F_phi_ordered(phi, tau, w, hab, phi.phi);
}

AbelianQuotient::Value F_phi_ordered(const CMType& phi, Element tau, const WSystem& w, const AbelianQuotient& hab,
                                     const std::vector<int>& order) {
    const FiniteGroup& g = *phi.field.group();
    Element prod = g.identity();
    for (int label : order)
        prod = g.mul(prod, factor(phi, tau, w, label));
    return hab.project(prod);
}

CheckResult check_w_independence(const CMField& field, int trials, std::uint64_t seed, bool break_systems) {
    CheckResult c{"w_independence", "F_Phi(tau) does not depend on the choice of the w-system", "", 0, 0, {}};
    const FiniteGroup& g = *field.group();
    const AbelianQuotient hab(field.fixing());
    const WSystem base = choose_w_system(field);
    const std::vector<CMType> types = enumerate_cm_types(field);
    for (int t = 0; t < trials; ++t) {
        WSystem w = choose_w_system(field, seed + static_cast<std::uint64_t>(t));
        if (break_systems)
            w = break_iota_compatibility(w, seed + static_cast<std::uint64_t>(t));
        for (const CMType& phi : types)
            for (int tau = 0; tau < g.order(); ++tau) {
                auto a = F_phi(phi, tau, base, hab);
                auto b = F_phi(phi, tau, w, hab);
                c.record(a == b, [&] {
                    return "Phi = " + labels_str(phi.phi) + ", tau = " + g.name(tau) + ", trial " + std::to_string(t) +
                           ": " + value_str(a) + " vs " + value_str(b);
                });
            }
    }
    return c;
}

CheckResult check_cocycle_law(const CMField& field, const WSystem& w) {
    CheckResult c{"cocycle_law", "F_Phi(sigma tau) = F_{tau Phi}(sigma) + F_Phi(tau) in H^ab", "", 0, 0, {}};
    const FiniteGroup& g = *field.group();
    const AbelianQuotient hab(field.fixing());
    for (const CMType& phi : enumerate_cm_types(field))
        for (int tau = 0; tau < g.order(); ++tau) {
            const CMType moved = translate_left(tau, phi);
            const auto f_tau = F_phi(phi, tau, w, hab);
            for (int sigma = 0; sigma < g.order(); ++sigma) {
                auto lhs = F_phi(phi, g.mul(sigma, tau), w, hab);
                auto rhs = hab.add(F_phi(moved, sigma, w, hab), f_tau);
                c.record(lhs == rhs, [&] {
                    return "Phi = " + labels_str(phi.phi) + ", sigma = " + g.name(sigma) + ", tau = " + g.name(tau);
                });
            }
        }
    return c;
}

CheckResult check_transfer_identity(const CMField& field, const WSystem& w) {
    CheckResult c{"transfer_identity", "F_Phi(tau) + F_{iota Phi}(tau) = Ver_{G -> H}(tau)", "", 0, 0, {}};
    const FiniteGroup& g = *field.group();
    const AbelianQuotient hab(field.fixing());
    for (const CMType& phi : enumerate_cm_types(field)) {
        const CMType conj = translate_left(field.iota(), phi);
        for (int tau = 0; tau < g.order(); ++tau) {
            auto lhs = hab.add(F_phi(phi, tau, w, hab), F_phi(conj, tau, w, hab));
            auto rhs = transfer(hab, tau);
            c.record(lhs == rhs, [&] {
                return "Phi = " + labels_str(phi.phi) + ", tau = " + g.name(tau) + ": " + value_str(lhs) + " vs " +
                       value_str(rhs);
            });
        }
    }
    return c;
}

CheckResult check_order_independence(const CMField& field, const WSystem& w, int trials, std::uint64_t seed) {
    CheckResult c{"order_independence", "the product over Phi is independent of its order in H^ab", "", 0, 0, {}};
    const FiniteGroup& g = *field.group();
    const AbelianQuotient hab(field.fixing());
    std::mt19937_64 rng = make_rng(seed, 0x0d);
    for (const CMType& phi : enumerate_cm_types(field))
        for (int t = 0; t < trials; ++t) {
            std::vector<int> order = phi.phi;
            std::shuffle(order.begin(), order.end(), rng);
            for (int tau = 0; tau < g.order(); ++tau)
                c.record(F_phi_ordered(phi, tau, w, hab, order) == F_phi(phi, tau, w, hab),
                         [&] { return "Phi = " + labels_str(phi.phi) + ", order " + labels_str(order); });
        }
    return c;
}

std::vector<ReflexOrbit> reflex_orbits(const CMType& phi) {
    const CosetSpace& cs = phi.field.embeddings();
    const Subgroup stab = stabilizer(phi);
    std::vector<ReflexOrbit> out;
    std::vector<bool> seen(static_cast<std::size_t>(cs.size()), false);
    for (int c : phi.phi) {
        if (seen[static_cast<std::size_t>(c)])
            continue;
        std::vector<int> labels;
        for (Element s : stab.elements()) {
            int d = cs.act(s, c);
            if (!seen[static_cast<std::size_t>(d)]) {
                seen[static_cast<std::size_t>(d)] = true;
                labels.push_back(d);
            }
        }
        std::sort(labels.begin(), labels.end());
        const Element base = cs.representative(c); // c is the minimal label of its orbit
        Subgroup local = stab.intersect(phi.field.fixing().conjugate(base));
        out.push_back(ReflexOrbit{std::move(labels), base, std::move(local)});
    }
    return out;
}

AbelianQuotient::Value orbit_partial(const CMType& phi, const ReflexOrbit& orbit, Element tau, const WSystem& w,
                                     const AbelianQuotient& hab) {
    const FiniteGroup& g = *phi.field.group();
    Element prod = g.identity();
    for (int label : orbit.labels)
        prod = g.mul(prod, factor(phi, tau, w, label));
    return hab.project(prod);
}

std::vector<Element> orbit_transfer_reps(const CMType& phi, const ReflexOrbit& orbit) {
    const FiniteGroup& g = *phi.field.group();
    const CosetSpace& cs = phi.field.embeddings();
    const Subgroup stab = stabilizer(phi);
    std::vector<Element> reps;
    for (int label : orbit.labels)
        for (Element s : stab.elements())
            if (cs.label_of(g.mul(s, orbit.base)) == label) {
                reps.push_back(s);
                break;
            }
    return reps;
}

AbelianQuotient::Value orbit_transfer(const CMType& phi, const ReflexOrbit& orbit, Element tau,
                                      const std::vector<Element>& reps, const AbelianQuotient& hab) {
    const FiniteGroup& g = *phi.field.group();
    const Subgroup stab = stabilizer(phi);
    Element v = transfer_product(stab, orbit.local, tau, reps);
    return hab.project(g.conj(g.inv(orbit.base), v));
}

CheckResult check_reflex_compatibility(const CMType& phi, const WSystem& w, int trials, std::uint64_t seed) {
    CheckResult c{"reflex_compatibility",
                  "for tau in Stab(Phi): F_Phi(tau) = sum_j sigma_j^-1 Ver_{S -> S cap sigma_j H sigma_j^-1}(tau) "
                  "sigma_j over Stab(Phi)-orbits of Phi",
                  "", 0, 0, {}};
    const FiniteGroup& g = *phi.field.group();
    const CosetSpace& cs = phi.field.embeddings();
    const AbelianQuotient hab(phi.field.fixing());
    const Subgroup stab = stabilizer(phi);
    const std::vector<ReflexOrbit> orbits = reflex_orbits(phi);
    std::mt19937_64 rng = make_rng(seed, 0x2e);

    // Random transfer representatives: s_phi ranges over a full coset of S_j.
    auto random_reps = [&](const ReflexOrbit& orbit) {
        std::vector<Element> reps = orbit_transfer_reps(phi, orbit);
        for (Element& s : reps) {
            const auto& locals = orbit.local.elements();
            s = g.mul(s, locals[static_cast<std::size_t>(rng() % locals.size())]);
        }
        return reps;
    };

    for (Element tau : stab.elements()) {
        AbelianQuotient::Value total = hab.zero();
        for (const ReflexOrbit& orbit : orbits) {
            const auto partial = orbit_partial(phi, orbit, tau, w, hab);
            total = hab.add(total, partial);
            c.record(partial == orbit_transfer(phi, orbit, tau, orbit_transfer_reps(phi, orbit), hab), [&] {
                return "Phi = " + labels_str(phi.phi) + ", tau = " + g.name(tau) + ", orbit base " +
                       g.name(orbit.base);
            });
            for (int t = 0; t < trials; ++t) {
                std::vector<Element> reps = random_reps(orbit);
                for (std::size_t i = 0; i < reps.size(); ++i)
                    if (cs.label_of(g.mul(reps[i], orbit.base)) != orbit.labels[i])
                        throw InternalInconsistency("transfer representative outside its coset");
                c.record(partial == orbit_transfer(phi, orbit, tau, reps, hab), [&] {
                    return "Phi = " + labels_str(phi.phi) + ", tau = " + g.name(tau) + ", random reps trial " +
                           std::to_string(t);
                });
            }
        }
        c.record(total == F_phi(phi, tau, w, hab),
                 [&] { return "Phi = " + labels_str(phi.phi) + ", tau = " + g.name(tau) + ": orbit sum"; });
    }
    return c;
}

std::vector<CheckResult> cocycle_suite(const CMField& field, const CocycleSuiteOptions& options) {
    std::vector<CheckResult> out;
    const WSystem w = choose_w_system(field);
    out.push_back(check_w_independence(field, options.trials, options.seed, options.inject_fault));
    out.push_back(check_cocycle_law(field, w));
    out.push_back(check_transfer_identity(field, w));
    out.push_back(check_order_independence(field, w, std::min(options.trials, 10), options.seed));
    CheckResult reflex{"reflex_compatibility", "", "", 0, 0, {}};
    for (const CMType& phi : enumerate_cm_types(field)) {
        CheckResult r = check_reflex_compatibility(phi, w, std::min(options.trials, 10), options.seed);
        reflex.statement = r.statement;
        reflex.merge(r);
    }
    out.push_back(std::move(reflex));
    return out;
}

} // namespace cm
