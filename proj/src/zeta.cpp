#include "cm/zeta.hpp"

#include <chrono>
#include <exception>
#include <sstream>
#include <thread>

#include "cm/errors.hpp"

namespace cm {

namespace {

long mod_long(const Integer& a, long p) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(p));
    return r.get_si();
}

long mod_long(long a, long p) { return ((a % p) + p) % p; }

/// #E(F_p) for y^2 = x^3 + a x + b with a, b already reduced mod an odd prime p.
long count_reduced(long a, long b, long p) {
    std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (long y = 1; y < p; ++y)
        chi[static_cast<std::size_t>(y * y % p)] = 1;
    long count = 1;
    for (long x = 0; x < p; ++x) {
        const long f = ((x * x % p) * x % p + a * x % p + b) % p;
        count += 1 + chi[static_cast<std::size_t>(f)];
    }
    return count;
}

EulerFactor poly_mul(const EulerFactor& f, const EulerFactor& g) {
    EulerFactor h(f.size() + g.size() - 1, Integer(0));
    for (std::size_t i = 0; i < f.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j)
            h[i + j] += f[i] * g[j];
    return h;
}

void require_good(const CurveSpec& curve, long p) {
    if (p == 2)
        throw BadPrime("p = 2 is excluded");
    if (!curve.good_at(p))
        throw BadPrime("p = " + std::to_string(p) + " divides the discriminant");
}

} // namespace

Integer CurveSpec::discriminant() const { return -16 * (4 * a4 * a4 * a4 + 27 * a6 * a6); }

bool CurveSpec::good_at(long p) const { return p > 2 && mod_long(discriminant(), p) != 0; }

CurveSpec make_curve(const Integer& a4, const Integer& a6) {
    CurveSpec c{a4, a6};
    if (c.discriminant() == 0)
        throw InputError("singular curve: discriminant is zero");
    return c;
}

int legendre(long a, long p) {
    Integer x = mod_long(a, p), q = p;
    return mpz_legendre(x.get_mpz_t(), q.get_mpz_t());
}

std::vector<long> primes_between(long lo, long hi) {
    std::vector<long> out;
    if (hi < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(hi + 1), false);
    for (long i = 2; i <= hi; ++i) {
        if (composite[static_cast<std::size_t>(i)])
            continue;
        if (i >= lo)
            out.push_back(i);
        for (long j = i * i; j <= hi; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

PointCount count_points(const CurveSpec& curve, long p) {
    require_good(curve, p);
    const long count = count_reduced(mod_long(curve.a4, p), mod_long(curve.a6, p), p);
    return {count, p + 1 - count};
}

PointCount count_points_naive(const CurveSpec& curve, long p) {
    require_good(curve, p);
    const long a = mod_long(curve.a4, p), b = mod_long(curve.a6, p);
    long count = 1;
    for (long x = 0; x < p; ++x)
        for (long y = 0; y < p; ++y)
            if ((y * y - (x * x % p * x + a * x + b)) % p == 0)
                ++count;
    return {count, p + 1 - count};
}

std::string to_string(const EulerFactor& f) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0)
            continue;
        Integer c = f[i];
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << "-";
        Integer ac = abs(c);
        if (i == 0 || ac != 1)
            os << ac;
        if (i >= 1)
            os << "T";
        if (i >= 2)
            os << "^" << i;
        first = false;
    }
    return first ? "0" : os.str();
}

EulerFactor euler_from_counts(long p, long a_p) {
    if (a_p * a_p > 4 * p)
        throw HasseViolation("|a_p| = " + std::to_string(a_p) + " exceeds 2 sqrt(" + std::to_string(p) + ")");
    return {Integer(1), Integer(-a_p), Integer(p)};
}

EulerFactor euler_from_hecke(const HeckeCharacterSpec& spec, long p) {
    const QuadField& k = spec.convention.field;
    PrimeDecomposition dec = factor_rational_prime(k, p);
    if (dec.kind == PrimeDecomposition::Kind::Ramified)
        throw RamifiedOrBadPrime(std::to_string(p) + " ramifies in the CM field");
    for (const QuadIdeal& q : dec.primes)
        if (!coprime(k, q, spec.convention.conductor))
            throw RamifiedOrBadPrime(std::to_string(p) + " divides the conductor");
    if (dec.kind == PrimeDecomposition::Kind::Split) {
        const QuadInt c1 = hecke_eval(spec, dec.primes[0]);
        const QuadInt c2 = hecke_eval(spec, dec.primes[1]);
        const QuadInt sum = qadd(k, c1, c2), prod = qmul(k, c1, c2);
        if (sum.b != 0 || prod.b != 0)
            throw InternalInconsistency("split Euler factor at " + std::to_string(p) + " is not rational");
        return {Integer(1), -sum.a, prod.a};
    }
    const QuadInt c = hecke_eval(spec, dec.primes[0]);
    if (c.b != 0)
        throw InternalInconsistency("inert Hecke value at " + std::to_string(p) + " is not rational");
    return {Integer(1), Integer(0), -c.a};
}

ZetaReport verify_cm_zeta(const CurveSpec& curve, const HeckeCharacterSpec& spec, long p_max, int threads) {
    const auto start = std::chrono::steady_clock::now();
    validate_hecke_spec(spec);
    ZetaReport report;
    const Integer cond_norm = spec.convention.conductor.norm();
    std::vector<long> todo;
    for (long p : primes_between(2, p_max)) {
        if (p == 2)
            report.excluded.push_back({p, "p = 2"});
        else if (!curve.good_at(p))
            report.excluded.push_back({p, "bad reduction"});
        else if (mod_long(cond_norm, p) == 0)
            report.excluded.push_back({p, "divides the conductor"});
        else
            todo.push_back(p);
    }

    std::vector<ZetaPrimeRow> rows(todo.size());
    auto work = [&](std::size_t i) {
        const long p = todo[i];
        ZetaPrimeRow& row = rows[i];
        row.p = p;
        row.splitting = to_string(factor_rational_prime(spec.convention.field, p).kind);
        PointCount pc = count_points(curve, p);
        row.a_p_count = pc.a_p;
        row.factor_count = euler_from_counts(p, pc.a_p);
        try {
            row.factor_hecke = euler_from_hecke(spec, p);
        } catch (const InternalInconsistency&) {
            row.factor_hecke.clear(); // the character is not conjugation-symmetric at p
        }
        row.match = row.factor_count == row.factor_hecke;
    };
    const std::size_t nthreads = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(threads), todo.size()));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < todo.size(); ++i)
            work(i);
    } else {
        std::vector<std::exception_ptr> errors(nthreads);
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = t; i < todo.size(); i += nthreads)
                        work(i);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool)
            th.join();
        for (auto& e : errors)
            if (e)
                std::rethrow_exception(e);
    }

    for (const ZetaPrimeRow& row : rows) {
        ++report.checked;
        report.mismatches += row.match ? 0 : 1;
        if ((row.a_p_count == 0) != (row.splitting == "inert"))
            report.supersingular_iff_inert = false;
    }
    report.rows = std::move(rows);
    report.runtime_us =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

QuadInt GaussianCurve::discriminant() const {
    const QuadField k(-1);
    QuadInt a3 = qmul(k, qmul(k, A, A), A);
    QuadInt b2 = qmul(k, B, B);
    QuadInt inner = qadd(k, QuadInt{4 * a3.a, 4 * a3.b}, QuadInt{27 * b2.a, 27 * b2.b});
    return QuadInt{-16 * inner.a, -16 * inner.b};
}

GaussianCurve default_gaussian_curve() { return GaussianCurve{QuadInt{0, 1}, QuadInt{0, 0}}; }

Fp2::Elt Fp2::add(Elt a, Elt b) const { return {(a.x0 + b.x0) % p, (a.x1 + b.x1) % p}; }

Fp2::Elt Fp2::mul(Elt a, Elt b) const {
    const long nn = mod_long(n, p);
    return {(a.x0 * b.x0 % p + (a.x1 * b.x1 % p) * nn) % p, (a.x0 * b.x1 + a.x1 * b.x0) % p};
}

Fp2::Elt Fp2::pow(Elt a, unsigned long long e) const {
    Elt r{1, 0};
    while (e) {
        if (e & 1ULL)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

long Fp2::norm(Elt a) const { return mod_long(a.x0 * a.x0 - mod_long(n, p) * (a.x1 * a.x1 % p), p); }

Fp2 make_fp2(long p) {
    if (p % 4 == 3)
        return Fp2{p, -1};
    long n = 2;
    while (legendre(n, p) != -1)
        ++n;
    return Fp2{p, n};
}

long count_points_fp2(const Fp2& f, Fp2::Elt a, Fp2::Elt b) {
    // The quadratic character of F_{p^2} is the Legendre symbol of the norm.
    const long p = f.p;
    std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
    chi[0] = 0;
    for (long y = 1; y < p; ++y)
        chi[static_cast<std::size_t>(y * y % p)] = 1;
    long count = 1;
    for (long x0 = 0; x0 < p; ++x0)
        for (long x1 = 0; x1 < p; ++x1) {
            const Fp2::Elt x{x0, x1};
            const Fp2::Elt fx = f.add(f.add(f.mul(f.mul(x, x), x), f.mul(a, x)), b);
            count += 1 + chi[static_cast<std::size_t>(f.norm(fx))];
        }
    return count;
}

ResScalarsReport verify_res_scalars(const GaussianCurve& curve, long p_max) {
    const QuadField k(-1);
    const Integer disc_norm = qnorm(k, curve.discriminant());
    if (disc_norm == 0)
        throw InputError("singular curve over Q(i)");
    ResScalarsReport report;
    for (long p : primes_between(2, p_max)) {
        if (p == 2) {
            report.excluded.push_back({p, "p = 2"});
            continue;
        }
        if (mod_long(disc_norm, p) == 0) {
            report.excluded.push_back({p, "bad reduction"});
            continue;
        }
        ResScalarsRow row;
        row.p = p;
        const PrimeDecomposition dec = factor_rational_prime(k, p);
        row.splitting = to_string(dec.kind);
        const Fp2 f2 = make_fp2(p);
        Integer n1, n2;
        if (dec.kind == PrimeDecomposition::Kind::Split) {
            n1 = 1;
            n2 = 1;
            row.induced = {Integer(1)};
            for (const QuadIdeal& q : dec.primes) {
                // O / q = F_p with omega = -c.
                const long w = mod_long(-q.c, p);
                const long a = mod_long(curve.A.a + curve.A.b * w, p);
                const long b = mod_long(curve.B.a + curve.B.b * w, p);
                const long c1 = count_reduced(a, b, p);
                const long c2 = count_points_fp2(f2, {a, 0}, {b, 0});
                n1 *= c1;
                n2 *= c2;
                row.induced = poly_mul(row.induced, euler_from_counts(p, p + 1 - c1));
            }
        } else {
            // O / p = F_p[i] = F_{p^2} with t = i.
            const Fp2::Elt a{mod_long(curve.A.a, p), mod_long(curve.A.b, p)};
            const Fp2::Elt b{mod_long(curve.B.a, p), mod_long(curve.B.b, p)};
            const Fp2::Elt ac{a.x0, mod_long(-a.x1, p)}, bc{b.x0, mod_long(-b.x1, p)};
            const long c = count_points_fp2(f2, a, b);
            const long c_conj = count_points_fp2(f2, ac, bc);
            n1 = c;
            n2 = Integer(c) * c_conj;
            const long a_q = p * p + 1 - c;
            if (a_q * a_q > 4 * p * p)
                throw HasseViolation("Frobenius trace at " + std::to_string(p) + " exceeds the Hasse bound");
            row.induced = {Integer(1), Integer(0), Integer(-a_q), Integer(0), Integer(p * p)};
        }
        row.n1 = n1.get_si();
        row.n2 = n2.get_si();
        // N1 = P(1), N2 = P(1) P(-1) for P = 1 + c1 T + c2 T^2 + p c1 T^3 + p^2 T^4.
        bool ok = mpz_divisible_p(n2.get_mpz_t(), n1.get_mpz_t()) != 0;
        if (ok) {
            const Integer pm1 = n2 / n1;
            const Integer num1 = n1 - pm1, den1 = 2 * (1 + Integer(p));
            const Integer num2 = n1 + pm1;
            ok = mpz_divisible_p(num1.get_mpz_t(), den1.get_mpz_t()) != 0 && mpz_even_p(num2.get_mpz_t()) != 0;
            if (ok) {
                const Integer c1 = num1 / den1;
                const Integer c2 = num2 / 2 - 1 - Integer(p) * p;
                row.direct = {Integer(1), c1, c2, p * c1, Integer(p) * p};
            }
        }
        row.match = ok && row.direct == row.induced;
        ++report.checked;
        report.mismatches += row.match ? 0 : 1;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace cm
