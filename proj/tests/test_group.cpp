#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>

#include "cm/battery.hpp"
#include "cm/errors.hpp"
#include "cm/group.hpp"

using namespace cm;

namespace {

// Symmetric group S3 from composition of permutations of {0, 1, 2}.
GroupPtr s3() {
    std::vector<std::array<int, 3>> perms;
    std::array<int, 3> p{0, 1, 2};
    do
        perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::vector<std::vector<int>> t(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i)
                c[static_cast<std::size_t>(i)] = perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                    perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)])];
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    return make_group(t);
}

// Quaternion group from its action on {+-1, +-i, +-j, +-k} encoded as (sign, unit).
GroupPtr q8() {
    // unit products: mult[u][v] = (sign, unit) for u, v in {1, i, j, k}
    const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<int>> t(8, std::vector<int>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int s = (a / 4 ? -1 : 1) * (b / 4 ? -1 : 1) * sign[a % 4][b % 4];
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = unit[a % 4][b % 4] + (s < 0 ? 4 : 0);
        }
    return make_group(t);
}

std::vector<GroupPtr> sample_groups() {
    return {cyclic_group(1), cyclic_group(2), cyclic_group(4), battery_context("C2xC2").group,
            battery_context("C2xC4").group, dihedral_group(4), dihedral_group(3), s3(), q8()};
}

std::set<Element> brute_commutator(const Subgroup& h) {
    const FiniteGroup& g = h.group();
    std::set<Element> s{g.identity()};
    for (Element a : h.elements())
        for (Element b : h.elements())
            s.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    bool grew = true;
    while (grew) {
        grew = false;
        for (Element a : std::vector<Element>(s.begin(), s.end()))
            for (Element b : std::vector<Element>(s.begin(), s.end()))
                grew |= s.insert(g.mul(a, b)).second;
    }
    return s;
}

// Transfer by the cycle decomposition of g on G/H: each cycle of length f
// with representative t contributes t^-1 g^f t.
Element transfer_by_cycles(const Subgroup& h, Element g) {
    const FiniteGroup& grp = h.group();
    CosetSpace cs(h);
    std::vector<bool> seen(static_cast<std::size_t>(cs.size()), false);
    Element prod = grp.identity();
    for (int c = 0; c < cs.size(); ++c) {
        if (seen[static_cast<std::size_t>(c)])
            continue;
        int f = 0;
        for (int d = c; !seen[static_cast<std::size_t>(d)]; d = cs.act(g, d)) {
            seen[static_cast<std::size_t>(d)] = true;
            ++f;
        }
        const Element t = cs.representative(c);
        prod = grp.mul(prod, grp.mul(grp.mul(grp.inv(t), grp.pow(g, f)), t));
    }
    return prod;
}

} // namespace

TEST_CASE("Cayley table validation") {
    CHECK_THROWS_AS(make_group({{0, 1}, {1}}), NotAGroup);
    CHECK_THROWS_AS(make_group({{0, 1}, {1, 1}}), NotAGroup);  // 1 has no inverse
    CHECK_THROWS_AS(make_group({{1, 0}, {0, 0}}), NotAGroup);  // no identity
    CHECK_THROWS_AS(make_group({{0, 2}, {1, 0}}), NotAGroup);  // out of range
    // A Latin square with identity that is not associative (order 5 loop).
    std::vector<std::vector<int>> loop{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(make_group(loop), NotAGroup);
    CHECK_NOTHROW(make_group({{0, 1}, {1, 0}}));
}

TEST_CASE("standard constructions") {
    GroupPtr d4 = dihedral_group(4);
    CHECK(d4->order() == 8);
    CHECK(!d4->is_abelian());
    CHECK(d4->name(4) == "s");
    CHECK(d4->name(5) == "rs");
    CHECK(d4->element_order(1) == 4);
    CHECK(d4->mul(4, 1) == d4->mul(3, 4)); // s r = r^-1 s
    GroupPtr p = battery_context("C2xC4").group;
    CHECK(p->is_abelian());
    CHECK(p->element_order(5) == 4);
    CHECK(q8()->order() == 8);
    CHECK(!q8()->is_abelian());
}

TEST_CASE("subgroups") {
    GroupPtr d4 = dihedral_group(4);
    CHECK_THROWS_AS(Subgroup(d4, {0, 1}), NotASubgroup);
    Subgroup h(d4, {0, 4});
    CHECK(!h.is_normal());
    CHECK(Subgroup(d4, {0, 2}).is_normal());
    CHECK(h.conjugate(1) == Subgroup(d4, {0, 6}));
    std::vector<Element> gens{1};
    CHECK(Subgroup::generated(d4, gens).order() == 4);
    // Normalizer against brute force.
    for (const Subgroup& k : subgroups_containing(Subgroup::trivial(d4))) {
        std::vector<Element> brute;
        for (int g = 0; g < 8; ++g)
            if (k.conjugate(g) == k)
                brute.push_back(g);
        CHECK(normalizer(k).elements() == brute);
    }
    CHECK(subgroups_containing(Subgroup::trivial(d4)).size() == 10);
}

TEST_CASE("coset action is a left action") {
    for (const GroupPtr& g : sample_groups())
        for (const Subgroup& h : subgroups_containing(Subgroup::trivial(g))) {
            CosetSpace cs(h);
            CHECK(cs.size() == h.index());
            for (int a = 0; a < g->order(); ++a)
                for (int b = 0; b < g->order(); ++b)
                    for (int c = 0; c < cs.size(); ++c)
                        REQUIRE(cs.act(a, cs.act(b, c)) == cs.act(g->mul(a, b), c));
        }
}

TEST_CASE("commutator subgroup and abelianization against brute force") {
    for (const GroupPtr& g : sample_groups())
        for (const Subgroup& h : subgroups_containing(Subgroup::trivial(g))) {
            std::set<Element> brute = brute_commutator(h);
            const Subgroup comm = commutator_subgroup(h);
            CHECK(std::vector<Element>(brute.begin(), brute.end()) == comm.elements());
            AbelianQuotient q(h);
            CHECK(q.order() == h.order() / static_cast<long>(brute.size()));
            // The projection is a homomorphism whose kernel is the commutator.
            for (Element a : h.elements()) {
                CHECK((q.project(a) == q.zero()) == (brute.count(a) == 1));
                for (Element b : h.elements())
                    REQUIRE(q.project(g->mul(a, b)) == q.add(q.project(a), q.project(b)));
            }
        }
}

TEST_CASE("abelian invariants of known groups") {
    CHECK(AbelianQuotient(Subgroup::whole(dihedral_group(4))).invariants() == std::vector<long>{2, 2});
    CHECK(AbelianQuotient(Subgroup::whole(q8())).invariants() == std::vector<long>{2, 2});
    CHECK(AbelianQuotient(Subgroup::whole(s3())).invariants() == std::vector<long>{2});
    CHECK(AbelianQuotient(Subgroup::whole(battery_context("C2xC4").group)).invariants() == std::vector<long>{2, 4});
    CHECK(AbelianQuotient(Subgroup::whole(cyclic_group(1))).is_trivial());
    GroupPtr d4 = dihedral_group(4);
    CHECK(commutator_subgroup(Subgroup::whole(d4)) == Subgroup(d4, {0, 2}));
}

TEST_CASE("transfer matches the abelian power formula") {
    for (const GroupPtr& g : sample_groups()) {
        if (!g->is_abelian())
            continue;
        for (const Subgroup& h : subgroups_containing(Subgroup::trivial(g))) {
            AbelianQuotient q(h);
            for (int x = 0; x < g->order(); ++x)
                CHECK(transfer(q, x) == q.project(g->pow(x, h.index())));
        }
    }
}

TEST_CASE("transfer matches the cycle decomposition formula") {
    for (const GroupPtr& g : sample_groups())
        for (const Subgroup& h : subgroups_containing(Subgroup::trivial(g))) {
            AbelianQuotient q(h);
            for (int x = 0; x < g->order(); ++x)
                CHECK(transfer(q, x) == q.project(transfer_by_cycles(h, x)));
        }
}

TEST_CASE("transfer is a homomorphism and independent of representatives") {
    std::mt19937_64 rng(99);
    for (const GroupPtr& g : sample_groups())
        for (const Subgroup& h : subgroups_containing(Subgroup::trivial(g))) {
            AbelianQuotient q(h);
            const Subgroup whole = Subgroup::whole(g);
            for (int a = 0; a < g->order(); ++a)
                for (int b = 0; b < g->order(); ++b)
                    REQUIRE(transfer(q, g->mul(a, b)) == q.add(transfer(q, a), transfer(q, b)));
            CosetSpace cs(h);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<Element> reps;
                for (int c = 0; c < cs.size(); ++c) {
                    const auto& coset = cs.coset(c);
                    reps.push_back(coset[static_cast<std::size_t>(rng() % coset.size())]);
                }
                std::shuffle(reps.begin(), reps.end(), rng);
                const int x = static_cast<int>(rng() % static_cast<unsigned long>(g->order()));
                REQUIRE(transfer(q, x, reps) == transfer(q, x));
                REQUIRE(q.project(transfer_product(whole, h, x, reps)) == transfer(q, x));
            }
        }
}

TEST_CASE("transfer representatives are validated") {
    GroupPtr d4 = dihedral_group(4);
    Subgroup h(d4, {0, 4});
    AbelianQuotient q(h);
    std::vector<Element> bad{0, 4, 1, 2}; // two representatives of the same coset
    CHECK_THROWS(transfer(q, 1, bad));
}
