#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "cm/errors.hpp"
#include "cm/zeta.hpp"

using namespace cm;

namespace {

const CurveSpec& lemniscate() {
    static const CurveSpec c = make_curve(-1, 0);
    return c;
}

HeckeCharacterSpec standard_spec(long d) { return HeckeCharacterSpec{standard_convention(QuadField(d)), 1, 0, {}}; }

EulerFactor poly(std::initializer_list<long> c) {
    EulerFactor f;
    for (long x : c)
        f.emplace_back(x);
    return f;
}

// Affine solutions of y^2 = x^3 + a x + b over F_{p^2}, by trying every pair.
long brute_fp2_count(const Fp2& f, Fp2::Elt a, Fp2::Elt b) {
    long count = 1; // point at infinity
    for (long x0 = 0; x0 < f.p; ++x0)
        for (long x1 = 0; x1 < f.p; ++x1) {
            const Fp2::Elt x{x0, x1};
            const Fp2::Elt rhs = f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(a, x)), b);
            for (long y0 = 0; y0 < f.p; ++y0)
                for (long y1 = 0; y1 < f.p; ++y1) {
                    const Fp2::Elt y{y0, y1};
                    count += f.mul(y, y) == rhs;
                }
        }
    return count;
}

} // namespace

TEST_CASE("point counts on y^2 = x^3 - x") {
    CHECK(count_points(lemniscate(), 3).count == 4);
    CHECK(count_points(lemniscate(), 3).a_p == 0);
    CHECK(count_points(lemniscate(), 5).count == 8);
    CHECK(count_points(lemniscate(), 5).a_p == -2);
    CHECK(count_points(lemniscate(), 13).a_p == 6);
    CHECK(count_points(lemniscate(), 17).a_p == 2);
    CHECK(count_points(lemniscate(), 29).a_p == -10);
    CHECK_THROWS_AS(count_points(lemniscate(), 2), BadPrime);
    CHECK_THROWS_AS(make_curve(0, 0), InputError);
    CHECK(lemniscate().discriminant() == 64);
}

TEST_CASE("Legendre-sum counts agree with naive enumeration") {
    for (const auto& [a4, a6] : std::vector<std::pair<long, long>>{{-1, 0}, {0, 16}, {2, 3}, {-7, 6}, {5, -1}}) {
        const CurveSpec c = make_curve(a4, a6);
        for (long p : primes_between(3, 97)) {
            if (!c.good_at(p)) {
                CHECK_THROWS_AS(count_points(c, p), BadPrime);
                continue;
            }
            const PointCount fast = count_points(c, p), slow = count_points_naive(c, p);
            REQUIRE(fast.count == slow.count);
            REQUIRE(fast.a_p == p + 1 - fast.count);
            REQUIRE(fast.a_p * fast.a_p <= 4 * p);
        }
    }
}

TEST_CASE("Legendre symbol and primes") {
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(3, 7) == -1);
    CHECK(legendre(14, 7) == 0);
    CHECK(legendre(-1, 13) == 1);
    CHECK(legendre(-1, 11) == -1);
    CHECK(primes_between(1, 30) == std::vector<long>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(primes_between(1000, 1000).empty());
    CHECK(primes_between(3, 1000).size() == 167);
}

TEST_CASE("Euler factors") {
    CHECK(euler_from_counts(5, -2) == poly({1, 2, 5}));
    CHECK(euler_from_counts(3, 0) == poly({1, 0, 3}));
    CHECK_THROWS_AS(euler_from_counts(5, 5), HasseViolation);
    CHECK(to_string(poly({1, 2, 5})) == "1 + 2T + 5T^2");

    const HeckeCharacterSpec spec = standard_spec(-1);
    CHECK(euler_from_hecke(spec, 3) == poly({1, 0, 3}));   // inert: chi((3)) = -3
    CHECK(euler_from_hecke(spec, 5) == poly({1, 2, 5}));   // -1 + 2i and -1 - 2i
    CHECK(euler_from_hecke(spec, 13) == poly({1, -6, 13})); // 3 + 2i and 3 - 2i
    CHECK_THROWS_AS(euler_from_hecke(spec, 2), RamifiedOrBadPrime);
}

TEST_CASE("the CM curve y^2 = x^3 - x matches its Hecke character") {
    const ZetaReport r = verify_cm_zeta(lemniscate(), standard_spec(-1), 1000, 1);
    CHECK(r.checked == 167);
    CHECK(r.mismatches == 0);
    CHECK(r.supersingular_iff_inert);
    REQUIRE(r.excluded.size() == 1);
    CHECK(r.excluded[0].p == 2);
    for (const ZetaPrimeRow& row : r.rows) {
        CHECK(row.match);
        CHECK(row.factor_count == row.factor_hecke);
        CHECK((row.a_p_count == 0) == (row.p % 4 == 3));
    }
    // Thread count does not change the result.
    const ZetaReport threaded = verify_cm_zeta(lemniscate(), standard_spec(-1), 1000, 4);
    REQUIRE(threaded.rows.size() == r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        CHECK(threaded.rows[i].p == r.rows[i].p);
        CHECK(threaded.rows[i].factor_hecke == r.rows[i].factor_hecke);
    }
}

TEST_CASE("the CM curve y^2 = x^3 + 16 matches its Hecke character over Q(sqrt -3)") {
    const CurveSpec c = make_curve(0, 16);
    const ZetaReport r = verify_cm_zeta(c, standard_spec(-3), 1000, 2);
    CHECK(r.mismatches == 0);
    CHECK(r.checked == 166);
    CHECK(r.supersingular_iff_inert);
    // Brute-force traces computed once outside the library.
    const std::map<long, long> frozen{{5, 0}, {7, -1}, {11, 0}, {13, 5}, {19, -7}, {31, -4}, {37, 11}, {43, 8}};
    for (const ZetaPrimeRow& row : r.rows)
        if (frozen.count(row.p))
            CHECK(row.a_p_count == frozen.at(row.p));
}

TEST_CASE("negative control: the wrong conductor breaks the match") {
    const QuadField k(-1);
    const HeckeCharacterSpec wrong{PrimaryConvention{k, parse_ideal_spec(k, "gen:2,1")}, 1, 0, {}};
    const ZetaReport r = verify_cm_zeta(lemniscate(), wrong, 200, 1);
    CHECK(r.mismatches > 0);
    // The wrong infinity type breaks it too.
    const HeckeCharacterSpec squared{standard_convention(k), 2, 0, {}};
    CHECK(verify_cm_zeta(lemniscate(), squared, 200, 1).mismatches > 0);
}

TEST_CASE("F_{p^2} arithmetic") {
    std::mt19937_64 rng(8);
    for (long p : primes_between(3, 61)) {
        const Fp2 f = make_fp2(p);
        CHECK(legendre(f.n, p) == -1);
        if (p % 4 == 3)
            CHECK(((f.n % p) + p) % p == p - 1);
        const unsigned long long half = (static_cast<unsigned long long>(p) * p - 1) / 2;
        for (int t = 0; t < 30; ++t) {
            const Fp2::Elt a{static_cast<long>(rng() % p), static_cast<long>(rng() % p)};
            if (a == Fp2::Elt{0, 0})
                continue;
            // The quadratic character of F_{p^2} is the Legendre symbol of the norm.
            const Fp2::Elt e = f.pow(a, half);
            CHECK((e == Fp2::Elt{1, 0}) == (legendre(f.norm(a), p) == 1));
            CHECK(f.norm(a) == f.mul(a, f.pow(a, static_cast<unsigned long long>(p))).x0);
            CHECK(f.pow(a, static_cast<unsigned long long>(p) * p) == a);
        }
    }
}

TEST_CASE("point counts over F_{p^2} agree with brute force") {
    std::mt19937_64 rng(12);
    for (long p : primes_between(3, 13)) {
        const Fp2 f = make_fp2(p);
        for (int t = 0; t < 4; ++t) {
            const Fp2::Elt a{static_cast<long>(rng() % p), static_cast<long>(rng() % p)};
            const Fp2::Elt b{static_cast<long>(rng() % p), static_cast<long>(rng() % p)};
            const long n = count_points_fp2(f, a, b);
            CHECK(n == brute_fp2_count(f, a, b));
        }
    }
}

TEST_CASE("restriction of scalars of y^2 = x^3 + i x") {
    const ResScalarsReport r = verify_res_scalars(default_gaussian_curve(), 200);
    CHECK(r.checked == 45);
    CHECK(r.mismatches == 0);
    for (const ResScalarsRow& row : r.rows) {
        CHECK(row.match);
        CHECK(row.direct.size() == 5);
        CHECK(row.direct.front() == 1);
        CHECK(row.direct.back() == Integer(row.p) * row.p);
        // Weil bounds for an abelian surface, and N1 | N2 since N2 = P(1) P(-1).
        const double root = std::sqrt(static_cast<double>(row.p));
        CHECK(static_cast<double>(row.n1) >= std::pow(root - 1, 4));
        CHECK(static_cast<double>(row.n1) <= std::pow(root + 1, 4));
        CHECK(row.n2 % row.n1 == 0);
    }
}
