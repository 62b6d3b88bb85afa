#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "cm/battery.hpp"
#include "cm/errors.hpp"
#include "cm/quadratic.hpp"
#include "cm/serre.hpp"

using namespace cm;

namespace {

CMField top_field(const std::string& context) {
    const BatteryContext ctx = battery_context(context);
    return CMField(Subgroup::trivial(ctx.group), ctx.iota);
}

// Closed form of the reflex norm on characters with E the top field:
// [rho] -> sum of [sigma] over sigma with sigma^-1 rho in Phi.
IntMatrix reflex_norm_oracle(const CMType& phi) {
    const FiniteGroup& g = *phi.field.group();
    const CosetSpace& cs = phi.field.embeddings();
    IntMatrix m(static_cast<std::size_t>(g.order()), static_cast<std::size_t>(cs.size()));
    for (int rho = 0; rho < cs.size(); ++rho)
        for (int s = 0; s < g.order(); ++s)
            if (phi.contains(cs.label_of(g.mul(g.inv(s), cs.representative(rho)))))
                m(static_cast<std::size_t>(s), static_cast<std::size_t>(rho)) = 1;
    return m;
}

// Brute-force Serre condition for a single character.
bool in_serre_brute(const CharLattice& full, const IntVector& chi, Element iota) {
    const IntVector t = full.act(iota).apply(chi);
    IntVector s(chi.size());
    for (std::size_t i = 0; i < chi.size(); ++i)
        s[i] = chi[i] + t[i];
    for (int g = 0; g < full.group->order(); ++g)
        if (full.act(g).apply(s) != s)
            return false;
    return true;
}

} // namespace

TEST_CASE("Serre lattice ranks are g + 1 on Galois CM fields") {
    CHECK(serre_character_lattice(top_field("C2")).rank() == 2);
    CHECK(serre_character_lattice(top_field("C4")).rank() == 3);
    CHECK(serre_character_lattice(top_field("C2xC2")).rank() == 3);
    CHECK(serre_character_lattice(top_field("C2xC4")).rank() == 5);
    CHECK(serre_character_lattice(top_field("D4")).rank() == 5);
    for (const BatteryField& f : battery_fields("all"))
        CHECK(serre_character_lattice(f.field).rank() == static_cast<std::size_t>(f.field.half_degree() + 1));
}

TEST_CASE("Serre lattice of Q is Z") {
    NumberField q(Subgroup::trivial(cyclic_group(1)), 0);
    const CharLattice s = serre_character_lattice(q);
    CHECK(s.rank() == 1);
    CHECK(s.ambient_rank() == 1);
}

TEST_CASE("imaginary quadratic Serre lattice is all of X*(K^x)") {
    const CharLattice s = serre_character_lattice(top_field("C2"));
    CHECK(s.lattice == Lattice::full(2));
    // The infinity-type lattice of any whitelisted field is the same object.
    for (long d : {-1L, -3L, -7L, -163L}) {
        const CharLattice inf = infinity_type_lattice(QuadField(d));
        CHECK(inf.lattice == s.lattice);
        CHECK(inf.act(1) == s.act(1));
        CHECK(inf.is_valid());
    }
}

TEST_CASE("Serre lattice agrees with the brute-force membership test") {
    for (const BatteryField& f : battery_fields("all")) {
        const CharLattice full = full_character_lattice(f.field);
        const CharLattice s = serre_character_lattice(f.field);
        CHECK(s.is_valid());
        const std::size_t n = full.ambient_rank();
        // Every vector with entries in {-1, 0, 1} on up to 8 coordinates.
        long total = 1;
        for (std::size_t i = 0; i < n; ++i)
            total *= 3;
        for (long code = 0; code < total; ++code) {
            IntVector chi(n);
            long c = code;
            for (std::size_t i = 0; i < n; ++i, c /= 3)
                chi[i] = c % 3 - 1;
            REQUIRE(s.lattice.contains(chi) == in_serre_brute(full, chi, f.field.iota()));
        }
    }
}

TEST_CASE("exact sequence ranks") {
    SerreSequenceReport q = check_serre_sequence(top_field("C2"));
    CHECK(q.rank_real == 1);
    CHECK(q.rank_middle == 3);
    CHECK(q.rank_serre == 2);
    CHECK(q.exact());
    SerreSequenceReport c4 = check_serre_sequence(top_field("C4"));
    CHECK(c4.rank_real == 2);
    CHECK(c4.rank_middle == 5);
    CHECK(c4.rank_serre == 3);
    CHECK(c4.exact());
    for (const BatteryField& f : battery_fields("all"))
        CHECK(check_serre_sequence(f.field).exact());
}

TEST_CASE("rho_Phi matches the reflex-norm closed form") {
    for (const std::string ctx : {"C2", "C4", "C2xC2", "C2xC4", "D4"}) {
        const CMField k = top_field(ctx);
        for (const CMType& phi : enumerate_cm_types(k)) {
            const LatticeMap r = rho_phi(phi);
            CHECK(r.matrix == reflex_norm_oracle(phi));
            CHECK(r.maps_into_target());
            CHECK(r.is_equivariant());
            CHECK(mt_rank(phi) == smith_normal_form(reflex_norm_oracle(phi)).rank);
        }
    }
}

TEST_CASE("Mumford-Tate ranks") {
    auto ranks = [](const std::string& ctx) {
        std::multiset<std::size_t> out;
        for (const CMType& phi : enumerate_cm_types(top_field(ctx)))
            out.insert(mt_rank(phi));
        return out;
    };
    CHECK(ranks("C2") == std::multiset<std::size_t>{2, 2});
    CHECK(ranks("C4") == std::multiset<std::size_t>{3, 3, 3, 3});
    CHECK(ranks("C2xC2") == std::multiset<std::size_t>{2, 2, 2, 2});
    CHECK(ranks("D4") == std::multiset<std::size_t>{3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3});
    const auto c2c4 = ranks("C2xC4");
    CHECK(std::set<std::size_t>(c2c4.begin(), c2c4.end()) == std::set<std::size_t>{2, 3, 5});
    // Primitive types reach the full Serre rank only when the reflex field is K.
    for (const CMType& phi : enumerate_cm_types(top_field("C2xC4")))
        if (!is_primitive(phi))
            CHECK(mt_rank(phi) < 5);
}

TEST_CASE("rho_Phi needs a Galois field containing the reflex field") {
    const CMField k = top_field("D4");
    const CMType phi = enumerate_cm_types(k).front();
    const NumberField non_normal(Subgroup(k.group(), {0, 4}), k.iota());
    CHECK_THROWS_AS(rho_phi(phi, non_normal), NotGalois);

    const CMField c4 = top_field("C4");
    const NumberField real_quadratic(Subgroup(c4.group(), {0, 2}), c4.iota());
    CHECK_THROWS_AS(rho_phi(enumerate_cm_types(c4).front(), real_quadratic), NoSolution);
}

TEST_CASE("Serre-pair axioms") {
    const CMField c4 = top_field("C4");
    const CharLattice full = full_character_lattice(c4);
    IntVector mu(4, Integer(0));
    mu[0] = 1;
    CHECK_THROWS_AS(require_serre_pair(full, mu, c4.iota()), NotSerrePair);
    // mu_Phi of a CM-type is a Serre cocharacter on S^K.
    const CharLattice s = serre_character_lattice(c4);
    for (const CMType& phi : enumerate_cm_types(c4))
        CHECK_NOTHROW(require_serre_pair(s, mu_phi(phi).functional, c4.iota()));
}

TEST_CASE("reciprocity cocharacter of the identity embedding") {
    const CMField k = top_field("C2");
    const CharLattice full = full_character_lattice(k);
    IntVector mu(2, Integer(0));
    mu[0] = 1;
    const LatticeMap n = reciprocity_cocharacter(full, mu, k);
    CHECK(n.matrix == IntMatrix::identity(2));
    CHECK(n.is_equivariant());
}

TEST_CASE("CM-types generate the Serre lattice") {
    for (const BatteryField& f : battery_fields("all")) {
        const GenerationReport g = check_generation(f.field);
        CHECK(g.equal);
        CHECK(g.generated == g.serre);
    }
}

TEST_CASE("weight and norm identities") {
    for (const BatteryField& f : battery_fields("all")) {
        CHECK(check_norm_through_serre(f.field).ok());
        const Cocharacter w = weight(f.field);
        const Cocharacter mu = mu_E(f.field);
        const std::size_t n = w.functional.size();
        // w = -(1 + iota) mu on the ambient lattice.
        for (std::size_t i = 0; i < n; ++i) {
            IntVector e(n, Integer(0));
            e[i] = 1;
            const IntVector ie = full_character_lattice(f.field).act(f.field.iota()).apply(e);
            CHECK(w.pair(e) == -(mu.pair(e) + mu.pair(ie)));
        }
    }
}

TEST_CASE("full identity suite passes on every battery field") {
    for (const BatteryField& f : battery_fields("all"))
        for (const CheckResult& c : serre_identity_suite(f.field)) {
            INFO(f.label, " ", c.name);
            CHECK(c.ok());
            CHECK(c.passed > 0);
        }
}
