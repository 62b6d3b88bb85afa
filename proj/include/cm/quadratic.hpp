#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cm/group.hpp"
#include "cm/int_matrix.hpp"
#include "cm/serre.hpp"

namespace cm {

/// Imaginary quadratic field Q(sqrt d) of class number one, with ring of
/// integers Z[omega]: omega = sqrt d for d = 2, 3 mod 4 and (1 + sqrt d)/2
/// for d = 1 mod 4.
class QuadField {
public:
    /// Throws InputError unless d is on the class-number-one list.
    explicit QuadField(long d);

    static const std::vector<long>& whitelist();

    long d() const { return d_; }
    bool half_integral() const { return half_; }
    /// omega^2 = trace * omega - norm_omega.
    long trace_omega() const { return half_ ? 1 : 0; }
    long norm_omega() const { return half_ ? (1 - d_) / 4 : -d_; }
    long discriminant() const { return half_ ? d_ : 4 * d_; }
    int unit_count() const { return d_ == -1 ? 4 : (d_ == -3 ? 6 : 2); }

    friend bool operator==(const QuadField& a, const QuadField& b) { return a.d_ == b.d_; }

private:
    long d_;
    bool half_;
};

/// a + b omega.
struct QuadInt {
    Integer a;
    Integer b;

    friend bool operator==(const QuadInt& x, const QuadInt& y) { return x.a == y.a && x.b == y.b; }
};

QuadInt qadd(const QuadField& k, const QuadInt& x, const QuadInt& y);
QuadInt qsub(const QuadField& k, const QuadInt& x, const QuadInt& y);
QuadInt qmul(const QuadField& k, const QuadInt& x, const QuadInt& y);
QuadInt qpow(const QuadField& k, const QuadInt& x, unsigned long e);
QuadInt qconj(const QuadField& k, const QuadInt& x);
Integer qnorm(const QuadField& k, const QuadInt& x);
Integer qtrace(const QuadField& k, const QuadInt& x);
/// x / y when the quotient is integral.
std::optional<QuadInt> qdiv_exact(const QuadField& k, const QuadInt& x, const QuadInt& y);
std::vector<QuadInt> units(const QuadField& k);
std::string to_string(const QuadField& k, const QuadInt& x);

/// Ideal Z n + Z (c + d omega) with d | n, d | c, 0 <= c < n, d > 0; this
/// reduced form is canonical, so equality is structural. Norm = n d.
struct QuadIdeal {
    Integer n;
    Integer c;
    Integer d;

    Integer norm() const { return n * d; }
    bool is_unit() const { return n == 1 && d == 1; }
    friend bool operator==(const QuadIdeal& x, const QuadIdeal& y) {
        return x.n == y.n && x.c == y.c && x.d == y.d;
    }
};

/// Ideal generated (as an O-module) by the given elements, not all zero.
QuadIdeal ideal_from_generators(const QuadField& k, const std::vector<QuadInt>& gens);
QuadIdeal principal_ideal(const QuadField& k, const QuadInt& x);
/// Validates and canonicalises an HNF triple; throws InputError if it is not an ideal.
QuadIdeal ideal_from_hnf(const QuadField& k, const Integer& n, const Integer& c, const Integer& d);
QuadIdeal ideal_mul(const QuadField& k, const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal ideal_pow(const QuadField& k, const QuadIdeal& x, unsigned long e);
QuadIdeal ideal_add(const QuadField& k, const QuadIdeal& x, const QuadIdeal& y);
QuadIdeal ideal_conj(const QuadField& k, const QuadIdeal& x);
bool ideal_contains(const QuadIdeal& m, const QuadInt& x);
bool coprime(const QuadField& k, const QuadIdeal& x, const QuadIdeal& y);
/// A generator, found as a shortest vector for the norm form.
QuadInt ideal_generator(const QuadField& k, const QuadIdeal& x);
std::string to_string(const QuadIdeal& x);

/// Canonical residue of x modulo m, and its index in [0, N(m)).
QuadInt reduce_mod(const QuadIdeal& m, const QuadInt& x);
std::size_t residue_index(const QuadIdeal& m, const QuadInt& x);

struct PrimeDecomposition {
    enum class Kind { Split, Inert, Ramified };
    Kind kind;
    std::vector<QuadIdeal> primes;  // one for inert/ramified, two for split
    std::vector<QuadInt> generators; // matching generators
};
std::string to_string(PrimeDecomposition::Kind kind);
/// Throws NotPrime.
PrimeDecomposition factor_rational_prime(const QuadField& k, const Integer& p);

/// (O/m)^x modulo the image of the units, in invariant-factor form, with a
/// discrete logarithm on residues coprime to m.
class RayClassGroup {
public:
    /// Throws InputError when N(m) exceeds max_norm().
    RayClassGroup(const QuadField& k, const QuadIdeal& modulus);

    static constexpr long max_norm() { return 4096; }

    const QuadField& field() const { return field_; }
    const QuadIdeal& modulus() const { return modulus_; }
    long residue_units() const { return residue_units_; }
    long unit_image() const { return unit_image_; }
    const std::vector<long>& invariants() const { return quotient_->invariants(); }
    long order() const { return quotient_->order(); }
    bool is_trivial() const { return quotient_->is_trivial(); }
    /// Whether distinct global units stay distinct modulo m.
    bool units_inject() const { return unit_image_ == field_.unit_count(); }
    /// Class of an element coprime to m; throws NotCoprime.
    AbelianQuotient::Value log(const QuadInt& x) const;

private:
    QuadField field_;
    QuadIdeal modulus_;
    long residue_units_ = 0;
    long unit_image_ = 0;
    std::vector<int> residue_to_class_; // -1 for non-units
    std::unique_ptr<AbelianQuotient> quotient_;
};

RayClassGroup ray_class_group(const QuadField& k, const QuadIdeal& modulus);

/// Normalisation of generators: the unique associate congruent to 1 modulo
/// the conductor.
struct PrimaryConvention {
    QuadField field;
    QuadIdeal conductor;
};
/// d = -1: 1 mod (1+i)^3. d = -3: 1 mod 3. Throws InputError for other d.
PrimaryConvention standard_convention(const QuadField& k);
/// Throws NotCoprime, or NoPrimaryGenerator when the ray class group of the
/// conductor is nontrivial or the units do not inject modulo it.
QuadInt primary_generator(const QuadIdeal& ideal, const PrimaryConvention& convention);

/// Algebraic Hecke character with values alpha^{n_id} conj(alpha)^{n_conj}
/// on primary generators, times a finite character of the ray class group of
/// the conductor given by exponents against its invariant factors.
struct HeckeCharacterSpec {
    PrimaryConvention convention;
    long n_id = 1;
    long n_conj = 0;
    std::vector<long> finite_twist;
};
/// Throws InputError for negative exponents or a twist that does not fit the
/// ray class group (which is trivial for every valid convention).
void validate_hecke_spec(const HeckeCharacterSpec& spec);
/// Throws NotCoprime.
QuadInt hecke_eval(const HeckeCharacterSpec& spec, const QuadIdeal& ideal);

/// {sum n_s s : n_s + n_conj(s) constant}: all of Z^2 for an imaginary
/// quadratic field, with complex conjugation swapping coordinates.
CharLattice infinity_type_lattice(const QuadField& k);
/// The weight functional, chi -> -(n_id + n_conj).
IntVector infinity_weight_functional(const QuadField& k);

/// "gen:a,b", "gen:a,b^k" or "hnf:n,c,d"; throws InputError.
QuadIdeal parse_ideal_spec(const QuadField& k, const std::string& spec);

} // namespace cm
