#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cm/quadratic.hpp"

namespace cm {

/// y^2 = x^3 + a4 x + a6 over Q.
struct CurveSpec {
    Integer a4;
    Integer a6;

    /// -16 (4 a4^3 + 27 a6^2); throws InputError if zero.
    Integer discriminant() const;
    bool good_at(long p) const;
};
CurveSpec make_curve(const Integer& a4, const Integer& a6);

struct PointCount {
    long count = 0;
    long a_p = 0;
};
/// #E(F_p) via 1 + sum_x (1 + (f(x)/p)). Throws BadPrime for p = 2 or p | disc.
PointCount count_points(const CurveSpec& curve, long p);
/// #E(F_p) by enumerating all pairs (x, y). Same preconditions.
PointCount count_points_naive(const CurveSpec& curve, long p);

/// Integer polynomial in T, constant term first.
using EulerFactor = std::vector<Integer>;
std::string to_string(const EulerFactor& f);

/// [1, -a_p, p]; throws HasseViolation if a_p^2 > 4p.
EulerFactor euler_from_counts(long p, long a_p);
/// (1 - chi(P) T)(1 - chi(P') T) for split p, 1 - chi((p)) T^2 for inert p.
/// Throws RamifiedOrBadPrime for ramified p or p dividing the conductor norm.
EulerFactor euler_from_hecke(const HeckeCharacterSpec& spec, long p);

struct ZetaPrimeRow {
    long p = 0;
    std::string splitting;
    long a_p_count = 0;
    EulerFactor factor_count;
    EulerFactor factor_hecke;
    bool match = false;
};
struct ExcludedPrime {
    long p = 0;
    std::string reason;
};
struct ZetaReport {
    std::vector<ZetaPrimeRow> rows;
    std::vector<ExcludedPrime> excluded;
    long checked = 0;
    long mismatches = 0;
    /// a_p = 0 exactly at the inert primes, over the checked range.
    bool supersingular_iff_inert = true;
    std::int64_t runtime_us = 0;
};
/// Compares both Euler factors at every prime p <= p_max that is good for
/// the curve and coprime to the conductor; the others are listed as excluded.
/// `threads` > 1 splits the primes across workers; the result does not depend on it.
ZetaReport verify_cm_zeta(const CurveSpec& curve, const HeckeCharacterSpec& spec, long p_max, int threads = 1);

/// y^2 = x^3 + A x + B over Q(i).
struct GaussianCurve {
    QuadInt A;
    QuadInt B;
    /// -16 (4 A^3 + 27 B^2).
    QuadInt discriminant() const;
};
/// The default test curve y^2 = x^3 + i x.
GaussianCurve default_gaussian_curve();

struct ResScalarsRow {
    long p = 0;
    std::string splitting;
    long n1 = 0; // #A_*(F_p)
    long n2 = 0; // #A_*(F_{p^2})
    EulerFactor direct;  // from n1, n2
    EulerFactor induced; // prod over P | p of P_P(T^{f_P})
    bool match = false;
};
struct ResScalarsReport {
    std::vector<ResScalarsRow> rows;
    std::vector<ExcludedPrime> excluded;
    long checked = 0;
    long mismatches = 0;
};
/// Local factors of the restriction of scalars to Q against the product of
/// the curve's local factors over the primes above p, for odd p <= p_max of
/// good reduction.
ResScalarsReport verify_res_scalars(const GaussianCurve& curve, long p_max);

/// Arithmetic in F_{p^2} = F_p[t] / (t^2 - n), n a non-residue.
struct Fp2 {
    long p;
    long n;
    struct Elt {
        long x0;
        long x1;
        friend bool operator==(const Elt& a, const Elt& b) { return a.x0 == b.x0 && a.x1 == b.x1; }
    };
    Elt add(Elt a, Elt b) const;
    Elt mul(Elt a, Elt b) const;
    Elt pow(Elt a, unsigned long long e) const;
    long norm(Elt a) const; // a * a^p, in F_p
};
/// Uses n = -1 when p = 3 mod 4, else the least non-residue.
Fp2 make_fp2(long p);
/// Number of points of y^2 = x^3 + a x + b over F_{p^2}, projective.
long count_points_fp2(const Fp2& f, Fp2::Elt a, Fp2::Elt b);

/// Legendre symbol (a / p) for odd prime p, a reduced or not.
int legendre(long a, long p);
/// Primes in [lo, hi].
std::vector<long> primes_between(long lo, long hi);

} // namespace cm
