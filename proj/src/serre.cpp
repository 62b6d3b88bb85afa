#include "cm/serre.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "cm/errors.hpp"

namespace cm {

namespace {

std::vector<Element> generating_set(const FiniteGroup& g) {
    std::vector<Element> gens;
    std::vector<bool> reached(static_cast<std::size_t>(g.order()), false);
    reached[static_cast<std::size_t>(g.identity())] = true;
    for (int x = 0; x < g.order(); ++x) {
        if (reached[static_cast<std::size_t>(x)])
            continue;
        gens.push_back(x);
        std::vector<Element> cur;
        for (int y = 0; y < g.order(); ++y)
            if (reached[static_cast<std::size_t>(y)])
                cur.push_back(y);
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (Element s : gens) {
                Element z = g.mul(cur[i], s);
                if (!reached[static_cast<std::size_t>(z)]) {
                    reached[static_cast<std::size_t>(z)] = true;
                    cur.push_back(z);
                }
            }
    }
    return gens;
}

IntVector unit_vector(std::size_t n, std::size_t i) {
    IntVector v(n, Integer(0));
    v[i] = 1;
    return v;
}

std::string set_str(const std::vector<int>& v) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << (i ? "," : "") << v[i];
    os << '}';
    return os.str();
}

/// Projection matrix [rho] -> [rho|small] for H_big <= H_small.
IntMatrix restriction_matrix(const NumberField& big, const NumberField& small) {
    const CosetSpace& cb = big.embeddings();
    IntMatrix p(static_cast<std::size_t>(small.degree()), static_cast<std::size_t>(big.degree()));
    for (int c = 0; c < cb.size(); ++c)
        p(static_cast<std::size_t>(small.embeddings().label_of(cb.representative(c))), static_cast<std::size_t>(c)) = 1;
    return p;
}

NumberField top_of_context(const NumberField& field) {
    return NumberField(Subgroup::trivial(field.group()), field.iota());
}

} // namespace

bool CharLattice::is_valid() const {
    const FiniteGroup& g = *group;
    if (action.size() != static_cast<std::size_t>(g.order()))
        return false;
    if (!(act(g.identity()) == IntMatrix::identity(ambient_rank())))
        return false;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (!(act(g.mul(a, b)) == act(a) * act(b)))
                return false;
    for (int a = 0; a < g.order(); ++a)
        if (!lattice.contains(image_of(act(a), lattice)))
            return false;
    return true;
}

bool LatticeMap::maps_into_target() const { return target.lattice.contains(image_of(matrix, source.lattice)); }

bool LatticeMap::is_equivariant() const {
    const FiniteGroup& g = *source.group;
    for (int t = 0; t < g.order(); ++t)
        if (!(matrix * source.act(t) == target.act(t) * matrix))
            return false;
    return true;
}

Cocharacter Cocharacter::translate(Element tau) const {
    const FiniteGroup& g = *lattice.group;
    return Cocharacter{lattice, functional * lattice.act(g.inv(tau))};
}

bool Cocharacter::agrees_with(const Cocharacter& other) const {
    const IntMatrix& b = lattice.lattice.basis();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        IntVector v = b.row(i);
        if (pair(v) != other.pair(v))
            return false;
    }
    return true;
}

IntMatrix left_translation_matrix(const NumberField& field, Element g) {
    const CosetSpace& cs = field.embeddings();
    IntMatrix p(static_cast<std::size_t>(cs.size()), static_cast<std::size_t>(cs.size()));
    for (int c = 0; c < cs.size(); ++c)
        p(static_cast<std::size_t>(cs.act(g, c)), static_cast<std::size_t>(c)) = 1;
    return p;
}

IntMatrix right_translation_matrix(const NumberField& field, Element g) {
    if (!normalizer(field.fixing()).contains(g))
        throw NotAnAutomorphismOfK("element " + std::to_string(g) + " does not normalize H");
    const CosetSpace& cs = field.embeddings();
    const FiniteGroup& grp = *field.group();
    IntMatrix p(static_cast<std::size_t>(cs.size()), static_cast<std::size_t>(cs.size()));
    for (int c = 0; c < cs.size(); ++c)
        p(static_cast<std::size_t>(cs.label_of(grp.mul(cs.representative(c), g))), static_cast<std::size_t>(c)) = 1;
    return p;
}

CharLattice full_character_lattice(const NumberField& field) {
    CharLattice x{field.group(), Lattice::full(static_cast<std::size_t>(field.degree())), {}};
    for (int g = 0; g < field.group()->order(); ++g)
        x.action.push_back(left_translation_matrix(field, g));
    return x;
}

CharLattice serre_character_lattice(const NumberField& field) {
    CharLattice x = full_character_lattice(field);
    const std::size_t n = x.ambient_rank();
    const IntMatrix id = IntMatrix::identity(n);
    const IntMatrix iota_plus_one = x.act(field.iota()) + id;
    IntMatrix stacked(0, n);
    for (int t = 0; t < field.group()->order(); ++t)
        stacked = stacked.stack((x.act(t) - id) * iota_plus_one);
    x.lattice = kernel_lattice(stacked);
    return x;
}

Cocharacter mu_E(const NumberField& field) {
    CharLattice s = serre_character_lattice(field);
    IntVector f = unit_vector(s.ambient_rank(), static_cast<std::size_t>(field.identity_embedding()));
    return Cocharacter{std::move(s), std::move(f)};
}

Cocharacter weight(const NumberField& field) {
    CharLattice s = serre_character_lattice(field);
    IntVector f(s.ambient_rank(), Integer(0));
    f[static_cast<std::size_t>(field.identity_embedding())] -= 1;
    f[static_cast<std::size_t>(field.conjugate_embedding(field.identity_embedding()))] -= 1;
    return Cocharacter{std::move(s), std::move(f)};
}

Cocharacter mu_phi(const CMType& phi) {
    CharLattice t = full_character_lattice(phi.field);
    IntVector f(t.ambient_rank(), Integer(0));
    for (int c : phi.phi)
        f[static_cast<std::size_t>(c)] = 1;
    return Cocharacter{std::move(t), std::move(f)};
}

LatticeMap rho_phi(const CMType& phi, const NumberField& e) {
    if (e.group() != phi.field.group())
        throw InputError("rho_phi: fields live in different contexts");
    if (!e.is_galois())
        throw NotGalois("the target field of rho_Phi must be Galois over Q");
    const CharLattice source = full_character_lattice(phi.field);
    const CharLattice target = serre_character_lattice(e);
    const std::size_t nk = source.ambient_rank();
    const std::size_t ne = target.ambient_rank();
    const std::size_t unknowns = nk * ne;
    auto var = [nk](std::size_t i, std::size_t j) { return i * nk + j; };

    std::vector<IntVector> rows;
    IntVector rhs;
    for (Element t : generating_set(*e.group())) {
        const IntMatrix& ae = target.act(t);
        const IntMatrix& ak = source.act(t);
        for (std::size_t i = 0; i < ne; ++i)
            for (std::size_t j = 0; j < nk; ++j) {
                IntVector row(unknowns, Integer(0));
                for (std::size_t k = 0; k < ne; ++k)
                    if (ae(i, k) != 0)
                        row[var(k, j)] += ae(i, k);
                for (std::size_t k = 0; k < nk; ++k)
                    if (ak(k, j) != 0)
                        row[var(i, k)] -= ak(k, j);
                rows.push_back(std::move(row));
                rhs.emplace_back(0);
            }
    }
    const auto id = static_cast<std::size_t>(e.identity_embedding());
    for (std::size_t j = 0; j < nk; ++j) {
        IntVector row(unknowns, Integer(0));
        row[var(id, j)] = 1;
        rows.push_back(std::move(row));
        rhs.emplace_back(phi.contains(static_cast<int>(j)) ? 1 : 0);
    }
    const IntMatrix system = IntMatrix::from_rows(rows, unknowns);
    auto sol = solve(system, rhs);
    if (!sol)
        throw NoSolution("no equivariant map realises mu_Phi; E does not contain the reflex field");
    if (integer_kernel(system).rows() != 0)
        throw InternalInconsistency("rho_Phi is not unique");
    IntMatrix m(ne, nk);
    for (std::size_t i = 0; i < ne; ++i)
        for (std::size_t j = 0; j < nk; ++j)
            m(i, j) = (*sol)[var(i, j)];
    LatticeMap map{source, target, std::move(m)};
    if (!map.maps_into_target())
        throw InternalInconsistency("rho_Phi does not land in X*(S^E)");
    return map;
}

LatticeMap rho_phi(const CMType& phi) { return rho_phi(phi, top_of_context(phi.field)); }

LatticeMap norm_lattice_map(const NumberField& e1, const NumberField& e2) {
    if (e1.group() != e2.group())
        throw InputError("norm map: fields live in different contexts");
    if (!e2.fixing().contains(e1.fixing()))
        throw NotNested("E1 does not contain E2");
    LatticeMap n{serre_character_lattice(e2), serre_character_lattice(e1), restriction_matrix(e1, e2).transpose()};
    if (!n.maps_into_target())
        throw InternalInconsistency("norm map does not land in X*(S^E1)");
    return n;
}

std::size_t mt_rank(const CMType& phi) {
    LatticeMap r = rho_phi(phi);
    return image_of(r.matrix, r.source.lattice).rank();
}

SerreSequenceReport check_serre_sequence(const CMField& field) {
    SerreSequenceReport rep;
    const CharLattice s = serre_character_lattice(field);
    const std::size_t n = s.ambient_rank();
    std::vector<Element> real_gens = field.fixing().elements();
    real_gens.push_back(field.iota());
    const Subgroup h0 = Subgroup::generated(field.group(), real_gens);
    const NumberField real(h0, field.iota());
    const std::size_t nr = static_cast<std::size_t>(real.degree());

    const auto one = static_cast<std::size_t>(field.identity_embedding());
    const auto conj = static_cast<std::size_t>(field.conjugate_embedding(field.identity_embedding()));
    IntMatrix to_middle(n + 1, n);
    for (std::size_t i = 0; i < n; ++i)
        to_middle(i, i) = 1;
    to_middle(n, one) -= 1;
    to_middle(n, conj) -= 1;

    IntMatrix from_middle(nr, n + 1);
    IntMatrix p = restriction_matrix(field, real);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            from_middle(i, j) = p(i, j);
        from_middle(i, n) = 1;
    }

    rep.rank_real = nr;
    rep.rank_middle = n + 1;
    rep.rank_serre = s.rank();
    const Lattice image_first = image_of(to_middle, s.lattice);
    rep.injective = image_first.rank() == s.rank();
    rep.exact_middle = image_first == kernel_lattice(from_middle);
    rep.surjective = image_lattice(from_middle) == Lattice::full(nr);
    rep.to_middle = std::move(to_middle);
    rep.from_middle = std::move(from_middle);
    return rep;
}

NormFactorReport check_norm_through_serre(const NumberField& field) {
    NormFactorReport rep;
    const CharLattice s = serre_character_lattice(field);
    const std::size_t n = s.ambient_rank();
    rep.norm_in_serre = s.lattice.contains(IntVector(n, Integer(1)));
    const auto one = static_cast<std::size_t>(field.identity_embedding());
    const auto conj = static_cast<std::size_t>(field.conjugate_embedding(field.identity_embedding()));
    const IntMatrix iota_plus_one = s.act(field.iota()) + IntMatrix::identity(n);
    rep.identity_holds = true;
    for (std::size_t r = 0; r < s.rank(); ++r) {
        IntVector chi = s.lattice.basis().row(r);
        IntVector lhs(n, chi[one] + (one == conj ? Integer(chi[one]) : Integer(chi[conj])));
        if (lhs != iota_plus_one.apply(chi))
            rep.identity_holds = false;
    }
    return rep;
}

GenerationReport check_generation(const CMField& field) {
    const std::size_t n = static_cast<std::size_t>(field.degree());
    std::vector<IntVector> gens;
    for (const CMType& phi : enumerate_cm_types(field)) {
        IntVector v(n, Integer(0));
        for (int c : phi.phi)
            v[static_cast<std::size_t>(c)] = 1;
        gens.push_back(std::move(v));
    }
    GenerationReport rep{Lattice::span(IntMatrix::from_rows(gens, n)), serre_character_lattice(field).lattice, false};
    rep.equal = rep.generated == rep.serre;
    return rep;
}

void require_serre_pair(const CharLattice& t, const IntVector& mu, Element iota) {
    if (mu.size() != t.ambient_rank())
        throw InputError("cocharacter has wrong length");
    if (!t.is_valid())
        throw NotSerrePair("the Galois action is not a representation stabilising the lattice");
    const FiniteGroup& g = *t.group;
    const IntMatrix& b = t.lattice.basis();
    for (int tau = 0; tau < g.order(); ++tau) {
        IntMatrix lhs = t.act(g.mul(tau, iota));
        IntMatrix rhs = t.act(g.mul(iota, tau));
        for (std::size_t r = 0; r < b.rows(); ++r)
            if (lhs.apply(b.row(r)) != rhs.apply(b.row(r)))
                throw NotSerrePair("axiom (a): tau*iota and iota*tau act differently for tau = " + std::to_string(tau));
    }
    IntVector w(mu.size());
    IntVector iota_mu = mu * t.act(g.inv(iota));
    for (std::size_t i = 0; i < mu.size(); ++i)
        w[i] = -mu[i] - iota_mu[i];
    for (int tau = 0; tau < g.order(); ++tau) {
        IntVector tw = w * t.act(g.inv(tau));
        for (std::size_t r = 0; r < b.rows(); ++r)
            if (dot(tw, b.row(r)) != dot(w, b.row(r)))
                throw NotSerrePair("axiom (b): the weight -mu - iota mu is not defined over Q (moved by " +
                                   std::to_string(tau) + ")");
    }
}

LatticeMap reciprocity_cocharacter(const CharLattice& t, const IntVector& mu, const NumberField& e) {
    if (t.group != e.group())
        throw InputError("reciprocity cocharacter: torus and field live in different contexts");
    if (!e.is_galois())
        throw NotGalois("E must be Galois over Q");
    require_serre_pair(t, mu, e.iota());
    const FiniteGroup& g = *t.group;
    const IntMatrix& b = t.lattice.basis();
    for (Element h : e.fixing().elements()) {
        IntVector hmu = mu * t.act(g.inv(h));
        for (std::size_t r = 0; r < b.rows(); ++r)
            if (dot(hmu, b.row(r)) != dot(mu, b.row(r)))
                throw NotSerrePair("mu is not defined over E (moved by " + std::to_string(h) + ")");
    }
    const CosetSpace& cs = e.embeddings();
    IntMatrix n(static_cast<std::size_t>(cs.size()), t.ambient_rank());
    for (int c = 0; c < cs.size(); ++c) {
        IntVector row = mu * t.act(g.inv(cs.representative(c)));
        for (std::size_t j = 0; j < row.size(); ++j)
            n(static_cast<std::size_t>(c), j) = row[j];
    }
    LatticeMap map{t, serre_character_lattice(e), std::move(n)};
    if (!map.maps_into_target())
        throw InternalInconsistency("N(T, mu) does not factor through X*(S^E)");
    return map;
}

std::vector<CheckResult> serre_identity_suite(const CMField& field) {
    const FiniteGroup& g = *field.group();
    const NumberField top = top_of_context(field);
    const std::vector<CMType> types = enumerate_cm_types(field);
    std::vector<CheckResult> out;

    std::map<std::vector<int>, LatticeMap> rho_top;
    auto rho_of = [&](const CMType& phi) -> const LatticeMap& {
        auto it = rho_top.find(phi.phi);
        if (it == rho_top.end())
            it = rho_top.emplace(phi.phi, rho_phi(phi, top)).first;
        return it->second;
    };

    {
        CheckResult c{"serre_rank", "rank X*(S^E) = g + 1", "", 0, 0, {}};
        for (const NumberField& e : {static_cast<const NumberField&>(field), top}) {
            std::size_t r = serre_character_lattice(e).rank();
            c.record(r == static_cast<std::size_t>(e.degree() / 2 + 1),
                     [&] { return "degree " + std::to_string(e.degree()) + " gives rank " + std::to_string(r); });
        }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"serre_sequence_exact", "0 -> X*(S^E) -> X*(E^x x Q^x) -> X*(E_0^x) -> 0 is exact", "", 0, 0, {}};
        for (const CMField& e : {field, CMField(Subgroup::trivial(field.group()), field.iota())}) {
            SerreSequenceReport r = check_serre_sequence(e);
            c.record(r.exact() && r.rank_serre == r.rank_real + 1 && r.rank_middle == 2 * r.rank_real + 1, [&] {
                return "ranks " + std::to_string(r.rank_real) + "," + std::to_string(r.rank_middle) + "," +
                       std::to_string(r.rank_serre);
            });
        }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"norm_through_serre", "Nm_{E/Q} factors through S^E and X*(-w^E o Nm) = X*(1 + iota)", "", 0, 0, {}};
        NormFactorReport r = check_norm_through_serre(field);
        c.record(r.ok(), [] { return std::string("identity fails on X*(S^E)"); });
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"weight_rational", "w^E o tau = w^E on X*(S^E) for all tau", "", 0, 0, {}};
        Cocharacter w = weight(field);
        for (int t = 0; t < g.order(); ++t)
            c.record(w.translate(t).agrees_with(w), [&] { return "tau = " + std::to_string(t); });
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"cm_types_generate", "sum over CM-types of sum_{phi in Phi} [phi] spans X*(S^E)", "", 0, 0, {}};
        GenerationReport r = check_generation(field);
        c.record(r.equal, [] { return std::string("generated lattice differs from X*(S^E)"); });
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"mu_phi_translation", "tau mu_Phi = mu_{tau Phi}", "", 0, 0, {}};
        for (const CMType& phi : types)
            for (int t = 0; t < g.order(); ++t) {
                Cocharacter lhs = mu_phi(phi).translate(t);
                Cocharacter rhs = mu_phi(translate_left(t, phi));
                c.record(lhs.functional == rhs.functional,
                         [&] { return "Phi = " + set_str(phi.phi) + ", tau = " + std::to_string(t); });
            }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"rho_phi_defining", "X*(rho_Phi) is equivariant and mu^E o X*(rho_Phi) = mu_Phi", "", 0, 0, {}};
        const Cocharacter me = mu_E(top);
        for (const CMType& phi : types) {
            const LatticeMap& r = rho_of(phi);
            bool ok = r.is_equivariant() && r.maps_into_target();
            for (std::size_t j = 0; j < r.source.ambient_rank(); ++j)
                ok = ok && me.pair(r.matrix.column(j)) == (phi.contains(static_cast<int>(j)) ? 1 : 0);
            c.record(ok, [&] { return "Phi = " + set_str(phi.phi); });
        }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"rho_phi_left_translation", "X*(rho_Phi o tau~^-1) = X*(rho_{tau Phi})", "", 0, 0, {}};
        for (const CMType& phi : types)
            for (int t = 0; t < g.order(); ++t) {
                IntMatrix lhs = right_translation_matrix(top, g.inv(t)) * rho_of(phi).matrix;
                c.record(lhs == rho_of(translate_left(t, phi)).matrix,
                         [&] { return "Phi = " + set_str(phi.phi) + ", tau = " + std::to_string(t); });
            }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"rho_phi_right_translation", "X*(tau~ o rho_Phi) = X*(rho_{Phi tau^-1}) when tau K = K", "", 0, 0, {}};
        Subgroup nk = normalizer(field.fixing());
        for (const CMType& phi : types)
            for (Element t : nk.elements()) {
                IntMatrix lhs = rho_of(phi).matrix * right_translation_matrix(field, t);
                c.record(lhs == rho_of(translate_right(g.inv(t), phi)).matrix,
                         [&] { return "Phi = " + set_str(phi.phi) + ", tau = " + std::to_string(t); });
            }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"norm_triangle", "rho_Phi on S^E1 = rho_Phi on S^E2 composed with Nm_{E1/E2}", "", 0, 0, {}};
        for (const CMType& phi : types) {
            Subgroup stab = stabilizer(phi);
            for (const Subgroup& n : subgroups_containing(Subgroup::trivial(field.group()))) {
                if (!n.is_normal() || !stab.contains(n))
                    continue;
                const NumberField e2(n, field.iota());
                LatticeMap nm = norm_lattice_map(top, e2);
                bool ok = nm.matrix * rho_phi(phi, e2).matrix == rho_of(phi).matrix;
                ok = ok && mu_E(top).functional * nm.matrix == mu_E(e2).functional;
                c.record(ok, [&] { return "Phi = " + set_str(phi.phi) + ", |N| = " + std::to_string(n.order()); });
            }
        }
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"induction", "rho_{Phi_1} = (K_2^x -> K_1^x) o rho_{Phi_2} when Phi_1 restricts to Phi_2", "", 0, 0, {}};
        for (const CMField& sub : cm_subfields(field)) {
            IntMatrix p = restriction_matrix(field, sub);
            for (const CMType& phi2 : enumerate_cm_types(sub)) {
                CMType phi1 = induce(field, phi2);
                bool ok = rho_of(phi1).matrix == rho_phi(phi2, top).matrix * p;
                c.record(ok, [&] {
                    return "sub |H| = " + std::to_string(sub.fixing().order()) + ", Phi_2 = " + set_str(phi2.phi);
                });
            }
        }
        out.push_back(std::move(c));
    }
    if (field.is_galois()) {
        CheckResult c{"rho_images_span", "sum over CM-types Phi of Im X*(rho_Phi) = X*(S^E)", "", 0, 0, {}};
        Lattice sum(static_cast<std::size_t>(field.degree()));
        for (const CMType& phi : types) {
            LatticeMap r = rho_phi(phi, field);
            sum = sum + image_of(r.matrix, r.source.lattice);
        }
        c.record(sum == serre_character_lattice(field).lattice, [] { return std::string("images do not span"); });
        out.push_back(std::move(c));
    }
    {
        CheckResult c{"reciprocity_cocharacter", "N(S^E, mu^E) is the inclusion and N(K^x, mu_Phi) = X*(rho_Phi)", "", 0, 0, {}};
        CharLattice s = serre_character_lattice(top);
        LatticeMap universal = reciprocity_cocharacter(s, mu_E(top).functional, top);
        c.record(universal.matrix == IntMatrix::identity(s.ambient_rank()),
                 [] { return std::string("N(S^E, mu^E) is not the inclusion"); });
        for (const CMType& phi : types) {
            LatticeMap n = reciprocity_cocharacter(full_character_lattice(field), mu_phi(phi).functional, top);
            c.record(n.matrix == rho_of(phi).matrix, [&] { return "Phi = " + set_str(phi.phi); });
        }
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace cm
