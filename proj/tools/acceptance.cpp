// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <thread>

#include "cm/battery.hpp"
#include "cm/cocycle.hpp"
#include "cm/quadratic.hpp"
#include "cm/report.hpp"
#include "cm/serre.hpp"
#include "cm/zeta.hpp"

using namespace cm;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

int failures = 0;

// A limit of zero means the criterion has no time bound.
void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = limit_s <= 0 || secs < limit_s;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::string timing = limit_s > 0 ? std::to_string(secs).substr(0, 5) + " s < " + std::to_string(limit_s).substr(0, 4) + " s"
                                     : std::to_string(secs).substr(0, 5) + " s";
    if (!in_time)
        timing += " EXCEEDED";
    std::printf("%s  %2d  %-34s  %s  [%s]\n", pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str(),
                timing.c_str());
    std::fflush(stdout);
}

CMField top(const std::string& ctx) {
    const BatteryContext c = battery_context(ctx);
    return CMField(Subgroup::trivial(c.group), c.iota);
}

// |(O/m)^x| / |image of units| by listing residues.
long ray_class_order_by_enumeration(const QuadField& k, const QuadIdeal& m) {
    const long n = m.n.get_si();
    std::set<std::pair<std::string, std::string>> seen;
    long residue_units = 0;
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b) {
            const QuadInt x{a, b};
            const QuadInt r = reduce_mod(m, x);
            if (!seen.insert({r.a.get_str(), r.b.get_str()}).second)
                continue;
            if (x == QuadInt{0, 0} ? m.is_unit() : coprime(k, principal_ideal(k, x), m))
                ++residue_units;
        }
    std::set<std::pair<std::string, std::string>> images;
    for (const QuadInt& u : units(k)) {
        const QuadInt r = reduce_mod(m, u);
        images.insert({r.a.get_str(), r.b.get_str()});
    }
    return residue_units / static_cast<long>(images.size());
}

} // namespace

int main() {
    const std::vector<BatteryField> fields = battery_fields("all");

    criterion(1, "Serre-lattice ranks and sequence", 1.0, [&] {
        Outcome o;
        for (const BatteryField& f : fields) {
            const SerreSequenceReport s = check_serre_sequence(f.field);
            o.ok = o.ok && s.exact() && s.rank_serre == static_cast<std::size_t>(f.field.half_degree() + 1) &&
                   serre_character_lattice(f.field).rank() == s.rank_serre;
        }
        auto ranks = [](const std::string& ctx) {
            const SerreSequenceReport s = check_serre_sequence(top(ctx));
            return std::vector<std::size_t>{s.rank_real, s.rank_middle, s.rank_serre};
        };
        o.ok = o.ok && ranks("C2") == std::vector<std::size_t>{1, 3, 2} &&
               ranks("C4") == std::vector<std::size_t>{2, 5, 3} && ranks("C2xC2") == std::vector<std::size_t>{2, 5, 3};
        o.detail = std::to_string(fields.size()) + " fields exact; C2 1,3,2; C4, C2xC2 2,5,3";
        return o;
    });

    criterion(2, "degenerate anchors", 0, [&] {
        const CharLattice gauss = serre_character_lattice(top("C2"));
        const CharLattice q = serre_character_lattice(NumberField(Subgroup::trivial(cyclic_group(1)), 0));
        Outcome o;
        o.ok = gauss.rank() == 2 && gauss.lattice == Lattice::full(2) && q.rank() == 1 && q.lattice == Lattice::full(1);
        o.detail = "S^Q(i) rank " + std::to_string(gauss.rank()) + " = full, S^Q rank " + std::to_string(q.rank());
        return o;
    });

    criterion(3, "CM-type census and generation", 1.0, [&] {
        Outcome o;
        long total = 0;
        for (const BatteryField& f : fields) {
            const auto types = enumerate_cm_types(f.field);
            total += static_cast<long>(types.size());
            o.ok = o.ok && types.size() == (1UL << f.field.half_degree()) && check_generation(f.field).equal;
        }
        o.detail = std::to_string(total) + " types, 2^g each, index 1 everywhere";
        return o;
    });

    criterion(4, "cocycle law, transfer, w-invariance", 10.0, [&] {
        Outcome o;
        long instances = 0, failed = 0;
        for (const BatteryField& f : fields) {
            const WSystem w = choose_w_system(f.field);
            for (const CheckResult& c : {check_cocycle_law(f.field, w), check_transfer_identity(f.field, w),
                                         check_w_independence(f.field, 100, 7)}) {
                instances += c.passed + c.failed;
                failed += c.failed;
            }
        }
        o.ok = failed == 0;
        o.detail = std::to_string(instances) + " instances, " + std::to_string(failed) + " failures, 100 rechoices";
        return o;
    });

    criterion(5, "reflex involution and stabilizers", 0, [&] {
        Outcome o;
        long primitive = 0;
        for (const BatteryField& f : fields)
            for (const CMType& phi : enumerate_cm_types(f.field)) {
                const FiniteGroup& g = *f.field.group();
                const std::vector<Element> x = phi.elements();
                const std::set<Element> xs(x.begin(), x.end());
                std::vector<Element> brute;
                for (int s = 0; s < g.order(); ++s) {
                    bool fixes = true;
                    for (Element y : x)
                        fixes = fixes && xs.count(g.mul(s, y)) == 1;
                    if (fixes)
                        brute.push_back(s);
                }
                o.ok = o.ok && reflex_field(phi).fixing().elements() == brute;
                if (is_primitive(phi)) {
                    ++primitive;
                    o.ok = o.ok && reflex_type(reflex_type(phi)) == phi;
                }
            }
        o.ok = o.ok && primitive > 0;
        o.detail = std::to_string(primitive) + " primitive types, stabilizers match brute force";
        return o;
    });

    criterion(6, "Mumford-Tate ranks", 0, [&] {
        Outcome o;
        for (const CMType& phi : enumerate_cm_types(top("C2xC2")))
            o.ok = o.ok && !is_primitive(phi) && mt_rank(phi) == 2;
        for (const CMType& phi : enumerate_cm_types(top("C4")))
            o.ok = o.ok && is_primitive(phi) && mt_rank(phi) == 3;
        o.detail = "C2xC2 imprimitive 2, C4 primitive 3";
        return o;
    });

    criterion(7, "zeta of y^2 = x^3 - x, p < 1000", 30.0, [&] {
        const QuadField k(-1);
        const HeckeCharacterSpec spec{standard_convention(k), 1, 0, {}};
        const CurveSpec curve = make_curve(-1, 0);
        const ZetaReport r = verify_cm_zeta(curve, spec, 1000, 1);
        Outcome o;
        o.ok = r.mismatches == 0 && r.checked == 167 && r.supersingular_iff_inert;
        o.ok = o.ok && count_points_naive(curve, 5).a_p == -2 && count_points_naive(curve, 13).a_p == 6;
        for (long p : primes_between(3, 999))
            if (p % 4 == 3)
                o.ok = o.ok && count_points_naive(curve, p).a_p == 0;
        o.detail = std::to_string(r.checked) + " primes, " + std::to_string(r.mismatches) +
                   " mismatches, a_5 = -2, a_13 = 6, a_p = 0 at p = 3 mod 4";
        return o;
    });

    criterion(8, "ray class groups of Q(i)", 0, [&] {
        const QuadField k(-1);
        const QuadIdeal cube = parse_ideal_spec(k, "gen:1,1^3");
        const QuadIdeal three = parse_ideal_spec(k, "gen:3,0");
        const RayClassGroup a(k, cube), b(k, three);
        Outcome o;
        o.ok = a.order() == 1 && b.order() == 2 && ray_class_order_by_enumeration(k, cube) == 1 &&
               ray_class_order_by_enumeration(k, three) == 2;
        o.detail = "mod (1+i)^3 order " + std::to_string(a.order()) + ", mod (3) order " + std::to_string(b.order());
        return o;
    });

    criterion(9, "restriction of scalars, p < 200", 0, [&] {
        const ResScalarsReport r = verify_res_scalars(default_gaussian_curve(), 199);
        Outcome o;
        o.ok = r.mismatches == 0 && r.checked == 45;
        o.detail = std::to_string(r.checked) + " primes, " + std::to_string(r.mismatches) + " mismatches";
        return o;
    });

    criterion(10, "determinism of check --seed 7", 0, [&] {
        CheckOptions opts;
        opts.suite = "all";
        opts.seed = 7;
        const int hw = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));
        std::vector<std::string> dumps;
        bool passed = true;
        for (int threads : {1, hw, 1}) {
            opts.threads = threads;
            bool p = false;
            dumps.push_back(check_report(fields, opts, p).dump(2));
            passed = passed && p;
        }
        Outcome o;
        o.ok = passed && dumps[0] == dumps[1] && dumps[0] == dumps[2];
        o.detail = "3 runs (1, " + std::to_string(hw) + ", 1 threads), " + std::to_string(dumps[0].size()) +
                   " bytes, identical";
        return o;
    });

    std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
    return failures == 0 ? 0 : 1;
}
