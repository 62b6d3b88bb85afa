#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "cm/errors.hpp"
#include "cm/quadratic.hpp"

using namespace cm;

namespace {

QuadInt qi(long a, long b) { return QuadInt{Integer(a), Integer(b)}; }

bool is_prime(long n) {
    if (n < 2)
        return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0)
            return false;
    return true;
}

// Kronecker symbol (D / p) for an odd prime p by Euler's criterion, and
// the mod-8 rule for p = 2.
int kronecker_oracle(long disc, long p) {
    if (p == 2) {
        if (disc % 2 == 0)
            return 0;
        const long r = ((disc % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    const long a = ((disc % p) + p) % p;
    if (a == 0)
        return 0;
    long r = 1, b = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

// |(O/m)^x| by enumerating a + b omega over a box that covers every residue.
long residue_units_oracle(const QuadField& k, const QuadIdeal& m) {
    const long n = m.n.get_si();
    std::set<std::pair<std::string, std::string>> seen;
    long count = 0;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            const QuadInt x = qi(a, b);
            const QuadInt r = reduce_mod(m, x);
            if (!seen.insert({r.a.get_str(), r.b.get_str()}).second)
                continue;
            // Zero is a unit only in the zero ring O/O.
            if (x == qi(0, 0) ? m.is_unit() : coprime(k, principal_ideal(k, x), m))
                ++count;
        }
    return count;
}

} // namespace

TEST_CASE("whitelist and basic invariants") {
    CHECK(QuadField::whitelist() == std::vector<long>{-1, -2, -3, -7, -11, -19, -43, -67, -163});
    CHECK_THROWS_AS(QuadField(-5), InputError);
    CHECK_THROWS_AS(QuadField(2), InputError);
    CHECK(QuadField(-1).discriminant() == -4);
    CHECK(QuadField(-7).discriminant() == -7);
    CHECK(QuadField(-3).unit_count() == 6);
    CHECK(units(QuadField(-3)).size() == 6);
    CHECK(units(QuadField(-1)).size() == 4);
    CHECK(units(QuadField(-163)).size() == 2);
}

TEST_CASE("element arithmetic") {
    const QuadField gauss(-1);
    CHECK(qmul(gauss, qi(0, 1), qi(0, 1)) == qi(-1, 0));
    CHECK(qmul(gauss, qi(2, 1), qi(2, -1)) == qi(5, 0));
    const QuadField k7(-7);
    // omega = (1 + sqrt -7)/2 satisfies omega^2 = omega - 2.
    CHECK(qmul(k7, qi(0, 1), qi(0, 1)) == qi(-2, 1));
    CHECK(qnorm(k7, qi(0, 1)) == 2);
    CHECK(qtrace(k7, qi(0, 1)) == 1);

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> dist(-50, 50);
    for (long d : QuadField::whitelist()) {
        const QuadField k(d);
        for (int t = 0; t < 50; ++t) {
            const QuadInt x = qi(dist(rng), dist(rng)), y = qi(dist(rng), dist(rng)), z = qi(dist(rng), dist(rng));
            REQUIRE(qmul(k, qmul(k, x, y), z) == qmul(k, x, qmul(k, y, z)));
            REQUIRE(qnorm(k, qmul(k, x, y)) == qnorm(k, x) * qnorm(k, y));
            REQUIRE(qmul(k, x, qconj(k, x)) == QuadInt{qnorm(k, x), 0});
            REQUIRE(qadd(k, x, qconj(k, x)) == QuadInt{qtrace(k, x), 0});
            REQUIRE(qpow(k, x, 3) == qmul(k, x, qmul(k, x, x)));
            if (!(y == qi(0, 0))) {
                auto q = qdiv_exact(k, qmul(k, x, y), y);
                REQUIRE(q);
                REQUIRE(*q == x);
            }
        }
    }
    CHECK(!qdiv_exact(gauss, qi(1, 0), qi(1, 1)));
}

TEST_CASE("ideals") {
    const QuadField k(-1);
    const QuadIdeal p = principal_ideal(k, qi(1, 1));
    CHECK(p.norm() == 2);
    CHECK(ideal_pow(k, p, 2) == principal_ideal(k, qi(2, 0)));
    CHECK(ideal_conj(k, principal_ideal(k, qi(2, 1))) == principal_ideal(k, qi(2, -1)));
    CHECK(ideal_mul(k, principal_ideal(k, qi(2, 1)), principal_ideal(k, qi(2, -1))) == principal_ideal(k, qi(5, 0)));
    CHECK(ideal_add(k, principal_ideal(k, qi(2, 1)), principal_ideal(k, qi(2, -1))).is_unit());
    CHECK(ideal_contains(principal_ideal(k, qi(3, 0)), qi(6, -9)));
    CHECK(!ideal_contains(principal_ideal(k, qi(3, 0)), qi(6, 1)));
    CHECK_THROWS_AS(ideal_from_hnf(k, 4, 1, 1), InputError);
    CHECK(ideal_from_hnf(k, 2, 1, 1) == p);

    std::mt19937_64 rng(2);
    std::uniform_int_distribution<long> dist(-20, 20);
    for (long d : QuadField::whitelist()) {
        const QuadField f(d);
        for (int t = 0; t < 40; ++t) {
            const QuadInt x = qi(dist(rng), dist(rng)), y = qi(dist(rng), dist(rng));
            if (x == qi(0, 0) || y == qi(0, 0))
                continue;
            const QuadIdeal a = principal_ideal(f, x), b = principal_ideal(f, y);
            REQUIRE(a.norm() == abs(qnorm(f, x)));
            REQUIRE(ideal_mul(f, a, b) == principal_ideal(f, qmul(f, x, y)));
            REQUIRE(ideal_from_generators(f, {x, qmul(f, x, y)}) == a);
            // Class number one: every ideal is principal and the generator is found.
            const QuadIdeal s = ideal_add(f, a, b);
            REQUIRE(principal_ideal(f, ideal_generator(f, s)) == s);
            REQUIRE(ideal_contains(s, x));
            REQUIRE(ideal_contains(s, y));
        }
    }
}

TEST_CASE("prime factorization across the whitelist") {
    for (long d : QuadField::whitelist()) {
        const QuadField k(d);
        for (long p = 2; p < 200; ++p) {
            if (!is_prime(p))
                continue;
            const PrimeDecomposition dec = factor_rational_prime(k, p);
            const int chi = kronecker_oracle(k.discriminant(), p);
            QuadIdeal prod = QuadIdeal{1, 0, 1};
            for (const QuadIdeal& q : dec.primes)
                prod = ideal_mul(k, prod, q);
            REQUIRE(dec.primes.size() == dec.generators.size());
            for (std::size_t i = 0; i < dec.primes.size(); ++i)
                REQUIRE(principal_ideal(k, dec.generators[i]) == dec.primes[i]);
            if (chi == 1) {
                REQUIRE(dec.kind == PrimeDecomposition::Kind::Split);
                REQUIRE(dec.primes.size() == 2);
                REQUIRE(dec.primes[0].norm() == p);
                REQUIRE(ideal_conj(k, dec.primes[0]) == dec.primes[1]);
                REQUIRE(prod == principal_ideal(k, qi(p, 0)));
            } else if (chi == -1) {
                REQUIRE(dec.kind == PrimeDecomposition::Kind::Inert);
                REQUIRE(dec.primes.size() == 1);
                REQUIRE(dec.primes[0] == principal_ideal(k, qi(p, 0)));
            } else {
                REQUIRE(dec.kind == PrimeDecomposition::Kind::Ramified);
                REQUIRE(ideal_pow(k, dec.primes[0], 2) == principal_ideal(k, qi(p, 0)));
            }
        }
    }
    CHECK_THROWS_AS(factor_rational_prime(QuadField(-1), 15), NotPrime);
    CHECK_THROWS_AS(factor_rational_prime(QuadField(-1), 1), NotPrime);
}

TEST_CASE("ray class groups") {
    const QuadField gauss(-1);
    auto rc = [&](const std::string& spec) { return RayClassGroup(gauss, parse_ideal_spec(gauss, spec)); };
    CHECK(rc("gen:1,1^3").is_trivial());
    CHECK(rc("gen:1,1^3").units_inject());
    CHECK(rc("gen:1,0").is_trivial());
    CHECK(rc("gen:3,0").order() == 2);
    CHECK(rc("gen:2,0").is_trivial());
    CHECK(!rc("gen:2,0").units_inject());
    CHECK(rc("gen:5,0").order() == 4);
    CHECK(RayClassGroup(QuadField(-3), parse_ideal_spec(QuadField(-3), "gen:3,0")).is_trivial());
    CHECK_THROWS_AS(RayClassGroup(gauss, principal_ideal(gauss, qi(100, 0))), InputError);

    for (long d : {-1L, -2L, -3L, -7L, -11L}) {
        const QuadField k(d);
        for (long a = 1; a < 8; ++a)
            for (long b = 0; b < 4; ++b) {
                const QuadIdeal m = principal_ideal(k, qi(a, b));
                if (m.norm() > 400)
                    continue;
                const RayClassGroup g(k, m);
                const long units = residue_units_oracle(k, m);
                INFO("d = ", d, " m = ", to_string(m));
                CHECK(g.residue_units() == units);
                CHECK(g.order() * g.unit_image() == units);
                CHECK(units % g.unit_image() == 0);
            }
    }
}

TEST_CASE("ray class log is a homomorphism onto the quotient") {
    const QuadField k(-1);
    const RayClassGroup g(k, principal_ideal(k, qi(5, 0)));
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<long> dist(-30, 30);
    const std::vector<long>& inv = g.invariants();
    for (int t = 0; t < 200; ++t) {
        const QuadInt x = qi(dist(rng), dist(rng)), y = qi(dist(rng), dist(rng));
        if (!coprime(k, principal_ideal(k, x), g.modulus()) || !coprime(k, principal_ideal(k, y), g.modulus()))
            continue;
        auto lx = g.log(x), ly = g.log(y), lxy = g.log(qmul(k, x, y));
        for (std::size_t i = 0; i < inv.size(); ++i)
            REQUIRE(lxy[i] == (lx[i] + ly[i]) % inv[i]);
    }
    for (const QuadInt& u : units(k))
        CHECK(g.log(u) == std::vector<long>(inv.size(), 0));
    CHECK_THROWS_AS(g.log(qi(2, 1)), NotCoprime);
}

TEST_CASE("primary generators") {
    const QuadField gauss(-1);
    const PrimaryConvention conv = standard_convention(gauss);
    CHECK(conv.conductor == ideal_pow(gauss, principal_ideal(gauss, qi(1, 1)), 3));
    CHECK(primary_generator(principal_ideal(gauss, qi(2, 1)), conv) == qi(-1, 2));
    CHECK(primary_generator(principal_ideal(gauss, qi(3, 0)), conv) == qi(-3, 0));
    const PrimeDecomposition thirteen = factor_rational_prime(gauss, 13);
    std::set<std::pair<long, long>> gens;
    for (const QuadIdeal& p : thirteen.primes) {
        const QuadInt g = primary_generator(p, conv);
        gens.insert({g.a.get_si(), g.b.get_si()});
    }
    CHECK(gens == std::set<std::pair<long, long>>{{3, 2}, {3, -2}});

    CHECK_THROWS_AS(primary_generator(principal_ideal(gauss, qi(1, 1)), conv), NotCoprime);
    const PrimaryConvention two{gauss, principal_ideal(gauss, qi(2, 0))};
    CHECK_THROWS_AS(primary_generator(principal_ideal(gauss, qi(2, 1)), two), NoPrimaryGenerator);
    CHECK_THROWS_AS(standard_convention(QuadField(-7)), InputError);

    // The primary generator is an associate congruent to 1 and is unique.
    for (long d : {-1L, -3L}) {
        const QuadField k(d);
        const PrimaryConvention c = standard_convention(k);
        for (long p = 3; p < 300; ++p) {
            if (!is_prime(p) || kronecker_oracle(k.discriminant(), p) == 0)
                continue;
            for (const QuadIdeal& q : factor_rational_prime(k, p).primes) {
                const QuadInt g = primary_generator(q, c);
                REQUIRE(principal_ideal(k, g) == q);
                REQUIRE(ideal_contains(c.conductor, qsub(k, g, qi(1, 0))));
                int congruent = 0;
                for (const QuadInt& u : units(k))
                    congruent += ideal_contains(c.conductor, qsub(k, qmul(k, u, g), qi(1, 0)));
                REQUIRE(congruent == 1);
            }
        }
    }
}

TEST_CASE("Hecke character values") {
    for (long d : {-1L, -3L}) {
        const QuadField k(d);
        const HeckeCharacterSpec spec{standard_convention(k), 1, 0, {}};
        CHECK_NOTHROW(validate_hecke_spec(spec));
        std::vector<QuadIdeal> primes;
        for (long p = 3; p < 120; ++p)
            if (is_prime(p) && kronecker_oracle(k.discriminant(), p) != 0)
                for (const QuadIdeal& q : factor_rational_prime(k, p).primes)
                    primes.push_back(q);
        for (const QuadIdeal& q : primes) {
            const QuadInt v = hecke_eval(spec, q);
            CHECK(QuadInt{qnorm(k, v), 0} == QuadInt{q.norm(), 0});
        }
        for (std::size_t i = 0; i + 1 < primes.size(); i += 3) {
            const QuadIdeal ab = ideal_mul(k, primes[i], primes[i + 1]);
            CHECK(hecke_eval(spec, ab) == qmul(k, hecke_eval(spec, primes[i]), hecke_eval(spec, primes[i + 1])));
        }
        // Swapping the infinity type conjugates the values.
        const HeckeCharacterSpec swapped{standard_convention(k), 0, 1, {}};
        for (const QuadIdeal& q : primes)
            CHECK(hecke_eval(swapped, q) == qconj(k, hecke_eval(spec, q)));
    }
    const QuadField gauss(-1);
    const HeckeCharacterSpec spec{standard_convention(gauss), 1, 0, {}};
    CHECK_THROWS_AS(hecke_eval(spec, principal_ideal(gauss, qi(1, 1))), NotCoprime);
    CHECK_THROWS_AS(validate_hecke_spec(HeckeCharacterSpec{standard_convention(gauss), -1, 0, {}}), InputError);
    CHECK_THROWS_AS(validate_hecke_spec(HeckeCharacterSpec{standard_convention(gauss), 1, 0, {1}}), InputError);
}

TEST_CASE("infinity types") {
    const QuadField k(-1);
    const CharLattice t = infinity_type_lattice(k);
    CHECK(t.rank() == 2);
    CHECK(t.act(1) == IntMatrix({{0, 1}, {1, 0}}));
    CHECK(infinity_weight_functional(k) == IntVector{Integer(-1), Integer(-1)});
}

TEST_CASE("ideal specs") {
    const QuadField k(-1);
    CHECK(parse_ideal_spec(k, "gen:1,1^3") == ideal_pow(k, principal_ideal(k, qi(1, 1)), 3));
    CHECK(parse_ideal_spec(k, "gen:2,1") == principal_ideal(k, qi(2, 1)));
    CHECK(parse_ideal_spec(k, "hnf:2,1,1") == principal_ideal(k, qi(1, 1)));
    for (const char* bad : {"", "gen:", "gen:1", "gen:0,0", "hnf:4,1,1", "ideal:1,2", "gen:1,1^-2", "gen:a,b"})
        CHECK_THROWS_AS(parse_ideal_spec(k, bad), InputError);
}
