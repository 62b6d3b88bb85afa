#include "cm/quadratic.hpp"

#include <algorithm>
#include <regex>

#include "cm/errors.hpp"

namespace cm {

namespace {

Integer mod_pos(const Integer& a, const Integer& m) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer fdiv(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer powm(const Integer& base, const Integer& e, const Integer& m) {
    Integer r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

/// Square root of a quadratic residue a modulo an odd prime p (Tonelli-Shanks).
Integer sqrt_mod(const Integer& a_in, const Integer& p) {
    const Integer a = mod_pos(a_in, p);
    if (a == 0)
        return 0;
    Integer q = p - 1;
    unsigned long s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Integer z = 2;
    while (mpz_legendre(z.get_mpz_t(), p.get_mpz_t()) != -1)
        ++z;
    Integer m = static_cast<unsigned long>(s);
    Integer c = powm(z, q, p);
    Integer t = powm(a, q, p);
    Integer r = powm(a, (q + 1) / 2, p);
    while (t != 1) {
        unsigned long i = 0;
        Integer t2 = t;
        while (t2 != 1) {
            t2 = mod_pos(t2 * t2, p);
            ++i;
        }
        Integer b = c;
        for (unsigned long j = 0; j + 1 < m.get_ui() - i; ++j)
            b = mod_pos(b * b, p);
        m = static_cast<unsigned long>(i);
        c = mod_pos(b * b, p);
        t = mod_pos(t * c, p);
        r = mod_pos(r * b, p);
    }
    return r;
}

QuadIdeal hnf_of_rows(const std::vector<IntVector>& rows) {
    HermiteForm h = hermite_normal_form(IntMatrix::from_rows(rows, 2));
    if (h.rank != 2)
        throw InputError("ideal generators must not all be zero");
    return QuadIdeal{h.H(1, 1), h.H(0, 1), h.H(0, 0)};
}

} // namespace

QuadField::QuadField(long d) : d_(d), half_(((d % 4) + 4) % 4 == 1) {
    const auto& w = whitelist();
    if (std::find(w.begin(), w.end(), d) == w.end())
        throw InputError("d = " + std::to_string(d) + " is not a class-number-one imaginary quadratic field");
}

const std::vector<long>& QuadField::whitelist() {
    static const std::vector<long> w{-1, -2, -3, -7, -11, -19, -43, -67, -163};
    return w;
}

QuadInt qadd(const QuadField&, const QuadInt& x, const QuadInt& y) { return {x.a + y.a, x.b + y.b}; }
QuadInt qsub(const QuadField&, const QuadInt& x, const QuadInt& y) { return {x.a - y.a, x.b - y.b}; }

QuadInt qmul(const QuadField& k, const QuadInt& x, const QuadInt& y) {
    // omega^2 = t omega - n
    const Integer bb = x.b * y.b;
    return {x.a * y.a - bb * k.norm_omega(), x.a * y.b + x.b * y.a + bb * k.trace_omega()};
}

QuadInt qpow(const QuadField& k, const QuadInt& x, unsigned long e) {
    QuadInt r{1, 0}, base = x;
    while (e) {
        if (e & 1UL)
            r = qmul(k, r, base);
        base = qmul(k, base, base);
        e >>= 1;
    }
    return r;
}

QuadInt qconj(const QuadField& k, const QuadInt& x) {
    // conj(omega) = t - omega
    return {x.a + x.b * k.trace_omega(), -x.b};
}

Integer qnorm(const QuadField& k, const QuadInt& x) {
    return x.a * x.a + x.a * x.b * k.trace_omega() + x.b * x.b * k.norm_omega();
}

Integer qtrace(const QuadField& k, const QuadInt& x) { return 2 * x.a + x.b * k.trace_omega(); }

std::optional<QuadInt> qdiv_exact(const QuadField& k, const QuadInt& x, const QuadInt& y) {
    const Integer n = qnorm(k, y);
    if (n == 0)
        throw InputError("division by zero");
    QuadInt num = qmul(k, x, qconj(k, y));
    if (!mpz_divisible_p(num.a.get_mpz_t(), n.get_mpz_t()) || !mpz_divisible_p(num.b.get_mpz_t(), n.get_mpz_t()))
        return std::nullopt;
    return QuadInt{num.a / n, num.b / n};
}

std::vector<QuadInt> units(const QuadField& k) {
    if (k.d() == -1)
        return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    if (k.d() == -3) {
        std::vector<QuadInt> u;
        for (unsigned long e = 0; e < 6; ++e)
            u.push_back(qpow(k, QuadInt{0, 1}, e));
        return u;
    }
    return {{1, 0}, {-1, 0}};
}

std::string to_string(const QuadField& k, const QuadInt& x) {
    const std::string sym = k.d() == -1 ? "i" : "w";
    if (x.b == 0)
        return x.a.get_str();
    std::string coef = x.b == 1 ? "" : (x.b == -1 ? "-" : x.b.get_str());
    if (x.a == 0)
        return coef + sym;
    return x.a.get_str() + (x.b > 0 ? "+" : "") + coef + sym;
}

QuadIdeal ideal_from_generators(const QuadField& k, const std::vector<QuadInt>& gens) {
    std::vector<IntVector> rows;
    for (const QuadInt& g : gens) {
        QuadInt gw = qmul(k, g, QuadInt{0, 1});
        rows.push_back({g.b, g.a});
        rows.push_back({gw.b, gw.a});
    }
    return hnf_of_rows(rows);
}

QuadIdeal principal_ideal(const QuadField& k, const QuadInt& x) { return ideal_from_generators(k, {x}); }

QuadIdeal ideal_from_hnf(const QuadField& k, const Integer& n, const Integer& c, const Integer& d) {
    if (n <= 0 || d <= 0)
        throw InputError("ideal HNF needs n > 0 and d > 0");
    QuadIdeal x = ideal_from_generators(k, {QuadInt{n, 0}, QuadInt{c, d}});
    if (x.n != n || x.d != d || x.c != mod_pos(c, n))
        throw InputError("(n, c, d) = (" + n.get_str() + ", " + c.get_str() + ", " + d.get_str() +
                         ") is not the HNF of an ideal");
    return x;
}

QuadIdeal ideal_mul(const QuadField& k, const QuadIdeal& x, const QuadIdeal& y) {
    const QuadInt xs[2] = {{x.n, 0}, {x.c, x.d}};
    const QuadInt ys[2] = {{y.n, 0}, {y.c, y.d}};
    std::vector<QuadInt> gens;
    for (const auto& a : xs)
        for (const auto& b : ys)
            gens.push_back(qmul(k, a, b));
    return ideal_from_generators(k, gens);
}

QuadIdeal ideal_pow(const QuadField& k, const QuadIdeal& x, unsigned long e) {
    QuadIdeal r{1, 0, 1};
    for (unsigned long i = 0; i < e; ++i)
        r = ideal_mul(k, r, x);
    return r;
}

QuadIdeal ideal_add(const QuadField& k, const QuadIdeal& x, const QuadIdeal& y) {
    return ideal_from_generators(k, {{x.n, 0}, {x.c, x.d}, {y.n, 0}, {y.c, y.d}});
}

QuadIdeal ideal_conj(const QuadField& k, const QuadIdeal& x) {
    return ideal_from_generators(k, {{x.n, 0}, qconj(k, QuadInt{x.c, x.d})});
}

QuadInt reduce_mod(const QuadIdeal& m, const QuadInt& x) {
    const Integer q = fdiv(x.b, m.d);
    return QuadInt{mod_pos(x.a - q * m.c, m.n), x.b - q * m.d};
}

std::size_t residue_index(const QuadIdeal& m, const QuadInt& x) {
    QuadInt r = reduce_mod(m, x);
    const Integer idx = r.b * m.n + r.a;
    return static_cast<std::size_t>(idx.get_ui());
}

bool ideal_contains(const QuadIdeal& m, const QuadInt& x) {
    QuadInt r = reduce_mod(m, x);
    return r.a == 0 && r.b == 0;
}

bool coprime(const QuadField& k, const QuadIdeal& x, const QuadIdeal& y) { return ideal_add(k, x, y).is_unit(); }

QuadInt ideal_generator(const QuadField& k, const QuadIdeal& x) {
    // Lagrange reduction for the norm form; in a principal ideal the
    // shortest nonzero vector generates.
    QuadInt u{x.n, 0}, v{x.c, x.d};
    if (qnorm(k, v) < qnorm(k, u))
        std::swap(u, v);
    for (;;) {
        const Integer nu = qnorm(k, u);
        const Integer t = qtrace(k, qmul(k, v, qconj(k, u))); // 2 B(u, v)
        const Integer mu = fdiv(t + nu, 2 * nu);
        v = qsub(k, v, QuadInt{mu * u.a, mu * u.b});
        if (qnorm(k, v) >= nu)
            break;
        std::swap(u, v);
    }
    if (qnorm(k, u) != x.norm() || !(principal_ideal(k, u) == x))
        throw InternalInconsistency("shortest vector of " + to_string(x) + " does not generate it");
    return u;
}

std::string to_string(const QuadIdeal& x) {
    return "[" + x.n.get_str() + ", " + x.c.get_str() + " + " + x.d.get_str() + "w]";
}

std::string to_string(PrimeDecomposition::Kind kind) {
    switch (kind) {
    case PrimeDecomposition::Kind::Split:
        return "split";
    case PrimeDecomposition::Kind::Inert:
        return "inert";
    case PrimeDecomposition::Kind::Ramified:
        return "ramified";
    }
    return "";
}

PrimeDecomposition factor_rational_prime(const QuadField& k, const Integer& p) {
    if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
        throw NotPrime(p.get_str() + " is not prime");
    const Integer disc = k.discriminant();
    PrimeDecomposition::Kind kind;
    if (p == 2) {
        if (mpz_even_p(disc.get_mpz_t()))
            kind = PrimeDecomposition::Kind::Ramified;
        else
            kind = mod_pos(disc, 8) == 1 ? PrimeDecomposition::Kind::Split : PrimeDecomposition::Kind::Inert;
    } else {
        Integer dm = mod_pos(disc, p);
        int l = mpz_legendre(dm.get_mpz_t(), p.get_mpz_t());
        kind = l == 0 ? PrimeDecomposition::Kind::Ramified
                      : (l == 1 ? PrimeDecomposition::Kind::Split : PrimeDecomposition::Kind::Inert);
    }
    PrimeDecomposition out{kind, {}, {}};
    if (kind == PrimeDecomposition::Kind::Inert) {
        out.primes.push_back(principal_ideal(k, QuadInt{p, 0}));
    } else {
        // Roots r of omega's minimal polynomial mod p give primes (p, omega - r).
        std::vector<Integer> roots;
        if (p == 2) {
            for (long r = 0; r < 2; ++r)
                if (mod_pos(Integer(r * r - k.trace_omega() * r + k.norm_omega()), p) == 0)
                    roots.emplace_back(r);
        } else {
            Integer s = sqrt_mod(Integer(k.d()), p);
            if (k.half_integral()) {
                Integer inv2 = (p + 1) / 2;
                roots = {mod_pos((1 + s) * inv2, p), mod_pos((1 - s) * inv2, p)};
            } else {
                roots = {s, mod_pos(-s, p)};
            }
        }
        for (const Integer& r : roots) {
            QuadIdeal q = ideal_from_generators(k, {QuadInt{p, 0}, QuadInt{-r, 1}});
            if (q.norm() != p)
                throw InternalInconsistency("prime above " + p.get_str() + " has wrong norm");
            if (std::find(out.primes.begin(), out.primes.end(), q) == out.primes.end())
                out.primes.push_back(q);
        }
        std::sort(out.primes.begin(), out.primes.end(), [](const QuadIdeal& a, const QuadIdeal& b) {
            return a.c != b.c ? a.c < b.c : a.d < b.d;
        });
        const std::size_t expected = kind == PrimeDecomposition::Kind::Split ? 2 : 1;
        if (out.primes.size() != expected)
            throw InternalInconsistency("wrong number of primes above " + p.get_str());
    }
    for (const QuadIdeal& q : out.primes)
        out.generators.push_back(ideal_generator(k, q));
    return out;
}

RayClassGroup::RayClassGroup(const QuadField& k, const QuadIdeal& modulus) : field_(k), modulus_(modulus) {
    const Integer norm = modulus.norm();
    if (norm > max_norm())
        throw InputError("modulus norm " + norm.get_str() + " exceeds " + std::to_string(max_norm()));
    const auto n = static_cast<std::size_t>(norm.get_ui());
    const long mn = modulus.n.get_si();
    auto element = [&](std::size_t idx) {
        return QuadInt{Integer(static_cast<long>(idx) % mn), Integer(static_cast<long>(idx) / mn)};
    };

    std::vector<bool> unit(n, false);
    for (std::size_t idx = 0; idx < n; ++idx) {
        QuadInt x = element(idx);
        unit[idx] = modulus.is_unit() || ((x.a != 0 || x.b != 0) && coprime(k, principal_ideal(k, x), modulus));
        residue_units_ += unit[idx] ? 1 : 0;
    }

    std::vector<std::size_t> unit_residues;
    for (const QuadInt& u : units(k))
        unit_residues.push_back(residue_index(modulus, u));
    std::sort(unit_residues.begin(), unit_residues.end());
    unit_residues.erase(std::unique(unit_residues.begin(), unit_residues.end()), unit_residues.end());
    unit_image_ = static_cast<long>(unit_residues.size());

    // Cosets of the unit image, labelled in order of their smallest residue.
    residue_to_class_.assign(n, -1);
    std::vector<std::size_t> class_rep;
    for (std::size_t idx = 0; idx < n; ++idx) {
        if (!unit[idx] || residue_to_class_[idx] >= 0)
            continue;
        const int cls = static_cast<int>(class_rep.size());
        class_rep.push_back(idx);
        for (const QuadInt& u : units(k))
            residue_to_class_[residue_index(modulus, qmul(k, element(idx), u))] = cls;
    }
    const std::size_t q = class_rep.size();
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < q; ++j)
            table[i][j] = residue_to_class_[residue_index(modulus, qmul(k, element(class_rep[i]), element(class_rep[j])))];
    GroupPtr quotient = make_group(std::move(table));
    quotient_ = std::make_unique<AbelianQuotient>(Subgroup::whole(quotient));
}

AbelianQuotient::Value RayClassGroup::log(const QuadInt& x) const {
    const int cls = residue_to_class_[residue_index(modulus_, x)];
    if (cls < 0)
        throw NotCoprime(to_string(field_, x) + " is not coprime to the modulus " + to_string(modulus_));
    return quotient_->project(cls);
}

RayClassGroup ray_class_group(const QuadField& k, const QuadIdeal& modulus) { return RayClassGroup(k, modulus); }

PrimaryConvention standard_convention(const QuadField& k) {
    if (k.d() == -1)
        return {k, ideal_pow(k, principal_ideal(k, QuadInt{1, 1}), 3)};
    if (k.d() == -3)
        return {k, principal_ideal(k, QuadInt{3, 0})};
    throw InputError("no standard primary convention for d = " + std::to_string(k.d()));
}

QuadInt primary_generator(const QuadIdeal& ideal, const PrimaryConvention& convention) {
    const QuadField& k = convention.field;
    if (!coprime(k, ideal, convention.conductor))
        throw NotCoprime(to_string(ideal) + " is not coprime to the conductor " + to_string(convention.conductor));
    RayClassGroup rcg(k, convention.conductor);
    if (!rcg.is_trivial())
        throw NoPrimaryGenerator("ray class group modulo " + to_string(convention.conductor) + " has order " +
                                 std::to_string(rcg.order()));
    if (!rcg.units_inject())
        throw NoPrimaryGenerator("distinct units agree modulo " + to_string(convention.conductor) +
                                 ", so the congruence does not single out one generator");
    const QuadInt alpha = ideal_generator(k, ideal);
    std::vector<QuadInt> found;
    for (const QuadInt& u : units(k)) {
        QuadInt beta = qmul(k, u, alpha);
        if (ideal_contains(convention.conductor, qsub(k, beta, QuadInt{1, 0})))
            found.push_back(beta);
    }
    if (found.size() != 1)
        throw InternalInconsistency(std::to_string(found.size()) + " generators of " + to_string(ideal) +
                                    " are congruent to 1");
    return found.front();
}

void validate_hecke_spec(const HeckeCharacterSpec& spec) {
    if (spec.n_id < 0 || spec.n_conj < 0)
        throw InputError("infinity type exponents must be nonnegative for O_K-valued evaluation");
    RayClassGroup rcg(spec.convention.field, spec.convention.conductor);
    if (spec.finite_twist.size() != rcg.invariants().size())
        throw InputError("finite twist has " + std::to_string(spec.finite_twist.size()) +
                         " exponents but the ray class group has " + std::to_string(rcg.invariants().size()) +
                         " invariant factors");
}

QuadInt hecke_eval(const HeckeCharacterSpec& spec, const QuadIdeal& ideal) {
    validate_hecke_spec(spec);
    const QuadField& k = spec.convention.field;
    const QuadInt alpha = primary_generator(ideal, spec.convention);
    return qmul(k, qpow(k, alpha, static_cast<unsigned long>(spec.n_id)),
                qpow(k, qconj(k, alpha), static_cast<unsigned long>(spec.n_conj)));
}

CharLattice infinity_type_lattice(const QuadField&) {
    GroupPtr c2 = cyclic_group(2);
    return CharLattice{c2, Lattice::full(2), {IntMatrix::identity(2), IntMatrix{{0, 1}, {1, 0}}}};
}

IntVector infinity_weight_functional(const QuadField&) { return {Integer(-1), Integer(-1)}; }

QuadIdeal parse_ideal_spec(const QuadField& k, const std::string& spec) {
    static const std::regex gen_re(R"(^gen:(-?\d+),(-?\d+)(\^(\d+))?$)");
    static const std::regex hnf_re(R"(^hnf:(\d+),(-?\d+),(\d+)$)");
    std::smatch m;
    if (std::regex_match(spec, m, gen_re)) {
        QuadInt g{Integer(m[1].str()), Integer(m[2].str())};
        if (g.a == 0 && g.b == 0)
            throw InputError("modulus generator must be nonzero");
        unsigned long e = m[4].matched ? std::stoul(m[4].str()) : 1UL;
        if (e > 64)
            throw InputError("exponent too large in '" + spec + "'");
        return principal_ideal(k, qpow(k, g, e));
    }
    if (std::regex_match(spec, m, hnf_re))
        return ideal_from_hnf(k, Integer(m[1].str()), Integer(m[2].str()), Integer(m[3].str()));
    throw InputError("cannot parse ideal '" + spec + "'; expected gen:a,b[^k] or hnf:n,c,d");
}

} // namespace cm
