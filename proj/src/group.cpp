#include "cm/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cm/errors.hpp"
#include "cm/int_matrix.hpp"

namespace cm {

namespace {

constexpr int kExhaustiveAssociativityLimit = 64;
constexpr int kAssociativitySamples = 200000;

std::string triple(int a, int b, int c) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

} // namespace

GroupPtr FiniteGroup::make(std::vector<std::vector<int>> table, std::vector<std::string> names) {
    const int n = static_cast<int>(table.size());
    if (n == 0)
        throw NotAGroup("empty table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw NotAGroup("table is not square");
        for (int x : row)
            if (x < 0 || x >= n)
                throw NotAGroup("entry " + std::to_string(x) + " out of range");
    }
    if (!names.empty() && static_cast<int>(names.size()) != n)
        throw NotAGroup("names list has wrong length");

    std::shared_ptr<FiniteGroup> g(new FiniteGroup());
    g->order_ = n;
    g->table_.reserve(static_cast<std::size_t>(n * n));
    for (const auto& row : table)
        g->table_.insert(g->table_.end(), row.begin(), row.end());

    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = g->mul(e, x) == x && g->mul(x, e) == x;
        if (ok)
            identity = e;
    }
    if (identity < 0)
        throw NotAGroup("no two-sided identity element");
    g->identity_ = identity;

    g->inverse_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (g->mul(a, b) == identity && g->mul(b, a) == identity) {
                g->inverse_[static_cast<std::size_t>(a)] = b;
                break;
            }
        if (g->inverse_[static_cast<std::size_t>(a)] < 0)
            throw NotAGroup("element " + std::to_string(a) + " has no inverse");
    }

    auto check = [&](int a, int b, int c) {
        if (g->mul(g->mul(a, b), c) != g->mul(a, g->mul(b, c)))
            throw NotAGroup("associativity fails at " + triple(a, b, c));
    };
    if (n <= kExhaustiveAssociativityLimit) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    check(a, b, c);
    } else {
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < kAssociativitySamples; ++i)
            check(pick(rng), pick(rng), pick(rng));
    }

    g->names_ = std::move(names);
    return g;
}

GroupPtr make_group(std::vector<std::vector<int>> table, std::vector<std::string> names) {
    return FiniteGroup::make(std::move(table), std::move(names));
}

Element FiniteGroup::pow(Element a, long n) const {
    if (n < 0) {
        a = inv(a);
        n = -n;
    }
    Element r = identity_;
    for (long i = 0; i < n; ++i)
        r = mul(r, a);
    return r;
}

int FiniteGroup::element_order(Element a) const {
    int k = 1;
    for (Element x = a; x != identity_; x = mul(x, a))
        ++k;
    return k;
}

bool FiniteGroup::is_abelian() const {
    for (int a = 0; a < order_; ++a)
        for (int b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a))
                return false;
    return true;
}

std::string FiniteGroup::name(Element a) const {
    if (names_.empty())
        return std::to_string(a);
    return names_[static_cast<std::size_t>(a)];
}

std::vector<std::vector<int>> FiniteGroup::table() const {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(order_));
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            t[static_cast<std::size_t>(a)].push_back(mul(a, b));
    return t;
}

GroupPtr cyclic_group(int n) {
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return make_group(std::move(t));
}

GroupPtr direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    return make_group(std::move(t));
}

GroupPtr dihedral_group(int n) {
    // (r^a s^b)(r^c s^d) = r^(a + (-1)^b c) s^(b + d)
    const int order = 2 * n;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
    std::vector<std::string> names;
    for (int x = 0; x < order; ++x) {
        int a = x % n, b = x / n;
        std::string nm = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
        if (b)
            nm += "s";
        names.push_back(nm.empty() ? "e" : nm);
        for (int y = 0; y < order; ++y) {
            int c = y % n, d = y / n;
            int ra = ((b ? a - c : a + c) % n + n) % n;
            t[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = ra + n * ((b + d) % 2);
        }
    }
    return make_group(std::move(t), std::move(names));
}

Subgroup::Subgroup(GroupPtr parent, std::vector<Element> elements) : parent_(std::move(parent)) {
    const FiniteGroup& g = *parent_;
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    member_.assign(static_cast<std::size_t>(g.order()), false);
    for (Element x : elements) {
        if (x < 0 || x >= g.order())
            throw NotASubgroup("element " + std::to_string(x) + " out of range");
        member_[static_cast<std::size_t>(x)] = true;
    }
    if (!contains(g.identity()))
        throw NotASubgroup("identity missing");
    for (Element a : elements)
        for (Element b : elements)
            if (!contains(g.mul(a, b)))
                throw NotASubgroup("not closed: " + std::to_string(a) + "*" + std::to_string(b));
    elements_ = std::move(elements);
}

Subgroup Subgroup::whole(GroupPtr parent) {
    std::vector<Element> all(static_cast<std::size_t>(parent->order()));
    for (int i = 0; i < parent->order(); ++i)
        all[static_cast<std::size_t>(i)] = i;
    return Subgroup(std::move(parent), std::move(all));
}

Subgroup Subgroup::trivial(GroupPtr parent) {
    Element e = parent->identity();
    return Subgroup(std::move(parent), {e});
}

Subgroup Subgroup::generated(GroupPtr parent, std::span<const Element> generators) {
    const FiniteGroup& g = *parent;
    std::vector<bool> seen(static_cast<std::size_t>(g.order()), false);
    std::vector<Element> out{g.identity()};
    seen[static_cast<std::size_t>(g.identity())] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
        for (Element s : generators) {
            Element y = g.mul(out[i], s);
            if (!seen[static_cast<std::size_t>(y)]) {
                seen[static_cast<std::size_t>(y)] = true;
                out.push_back(y);
            }
        }
    return Subgroup(std::move(parent), std::move(out));
}

bool Subgroup::contains(const Subgroup& other) const {
    if (other.parent_ != parent_)
        return false;
    return std::all_of(other.elements_.begin(), other.elements_.end(),
                       [this](Element x) { return contains(x); });
}

bool Subgroup::is_normal() const {
    const FiniteGroup& g = *parent_;
    for (int x = 0; x < g.order(); ++x)
        for (Element h : elements_)
            if (!contains(g.conj(x, h)))
                return false;
    return true;
}

Subgroup Subgroup::conjugate(Element x) const {
    std::vector<Element> c;
    c.reserve(elements_.size());
    for (Element h : elements_)
        c.push_back(parent_->conj(x, h));
    return Subgroup(parent_, std::move(c));
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
    std::vector<Element> c;
    for (Element h : elements_)
        if (other.contains(h))
            c.push_back(h);
    return Subgroup(parent_, std::move(c));
}

Subgroup normalizer(const Subgroup& h) {
    const FiniteGroup& g = h.group();
    std::vector<Element> n;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = std::all_of(h.elements().begin(), h.elements().end(),
                              [&](Element y) { return h.contains(g.conj(x, y)); });
        if (ok)
            n.push_back(x);
    }
    return Subgroup(h.parent(), std::move(n));
}

Subgroup commutator_subgroup(const Subgroup& h) {
    const FiniteGroup& g = h.group();
    std::set<Element> comms;
    for (Element a : h.elements())
        for (Element b : h.elements())
            comms.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    std::vector<Element> gens(comms.begin(), comms.end());
    return Subgroup::generated(h.parent(), gens);
}

std::vector<Subgroup> subgroups_containing(const Subgroup& h) {
    const FiniteGroup& g = h.group();
    std::set<std::vector<Element>> seen{h.elements()};
    std::deque<Subgroup> queue{h};
    std::vector<Subgroup> out;
    while (!queue.empty()) {
        Subgroup k = queue.front();
        queue.pop_front();
        out.push_back(k);
        for (int x = 0; x < g.order(); ++x) {
            if (k.contains(x))
                continue;
            std::vector<Element> gens = k.elements();
            gens.push_back(x);
            Subgroup bigger = Subgroup::generated(h.parent(), gens);
            if (seen.insert(bigger.elements()).second)
                queue.push_back(bigger);
        }
    }
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order())
            return a.order() < b.order();
        return a.elements() < b.elements();
    });
    return out;
}

CosetSpace::CosetSpace(Subgroup h) : h_(std::move(h)) {
    const FiniteGroup& g = h_.group();
    label_.assign(static_cast<std::size_t>(g.order()), -1);
    for (int x = 0; x < g.order(); ++x) {
        if (label_[static_cast<std::size_t>(x)] >= 0)
            continue;
        // x is the minimal element of its coset since we scan in index order.
        std::vector<Element> c;
        for (Element y : h_.elements())
            c.push_back(g.mul(x, y));
        std::sort(c.begin(), c.end());
        for (Element y : c)
            label_[static_cast<std::size_t>(y)] = static_cast<int>(cosets_.size());
        cosets_.push_back(std::move(c));
    }
}

int CosetSpace::act(Element g, int label) const { return label_of(h_.group().mul(g, representative(label))); }

AbelianQuotient::AbelianQuotient(Subgroup source)
    : source_(std::move(source)), commutator_(commutator_subgroup(source_)) {
    const FiniteGroup& g = source_.group();

    // Cosets of the commutator subgroup inside the source, by minimal element.
    std::vector<int> qlabel(static_cast<std::size_t>(g.order()), -1);
    std::vector<Element> qrep;
    for (Element x : source_.elements()) {
        if (qlabel[static_cast<std::size_t>(x)] >= 0)
            continue;
        for (Element c : commutator_.elements())
            qlabel[static_cast<std::size_t>(g.mul(x, c))] = static_cast<int>(qrep.size());
        qrep.push_back(x);
    }
    const int qorder = static_cast<int>(qrep.size());
    auto qmul = [&](int a, int b) {
        return qlabel[static_cast<std::size_t>(g.mul(qrep[static_cast<std::size_t>(a)], qrep[static_cast<std::size_t>(b)]))];
    };

    // Greedy generating set of the quotient.
    std::vector<int> gens;
    std::vector<bool> reached(static_cast<std::size_t>(qorder), false);
    auto close = [&]() {
        std::vector<int> cur;
        for (int q = 0; q < qorder; ++q)
            if (reached[static_cast<std::size_t>(q)])
                cur.push_back(q);
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (int s : gens) {
                int y = qmul(cur[i], s);
                if (!reached[static_cast<std::size_t>(y)]) {
                    reached[static_cast<std::size_t>(y)] = true;
                    cur.push_back(y);
                }
            }
    };
    const int qid = qlabel[static_cast<std::size_t>(g.identity())];
    reached[static_cast<std::size_t>(qid)] = true;
    for (int q = 0; q < qorder; ++q)
        if (!reached[static_cast<std::size_t>(q)]) {
            gens.push_back(q);
            close();
        }

    const std::size_t k = gens.size();
    projection_.assign(static_cast<std::size_t>(g.order()), Value{});
    if (k == 0) {
        for (Element x : source_.elements())
            projection_[static_cast<std::size_t>(x)] = Value{};
        return;
    }

    // Breadth-first spanning tree gives exponent vectors; every edge not
    // explained by the tree yields a relation.
    std::vector<IntVector> exps(static_cast<std::size_t>(qorder));
    std::vector<bool> visited(static_cast<std::size_t>(qorder), false);
    std::vector<int> order{qid};
    visited[static_cast<std::size_t>(qid)] = true;
    exps[static_cast<std::size_t>(qid)] = IntVector(k, Integer(0));
    for (std::size_t i = 0; i < order.size(); ++i) {
        int q = order[i];
        for (std::size_t s = 0; s < k; ++s) {
            int y = qmul(q, gens[s]);
            if (!visited[static_cast<std::size_t>(y)]) {
                visited[static_cast<std::size_t>(y)] = true;
                IntVector e = exps[static_cast<std::size_t>(q)];
                e[s] += 1;
                exps[static_cast<std::size_t>(y)] = std::move(e);
                order.push_back(y);
            }
        }
    }
    std::vector<IntVector> rels;
    for (int q : order)
        for (std::size_t s = 0; s < k; ++s) {
            int y = qmul(q, gens[s]);
            IntVector r = exps[static_cast<std::size_t>(q)];
            r[s] += 1;
            for (std::size_t j = 0; j < k; ++j)
                r[j] -= exps[static_cast<std::size_t>(y)][j];
            if (std::any_of(r.begin(), r.end(), [](const Integer& v) { return v != 0; }))
                rels.push_back(std::move(r));
        }
    SmithForm snf = smith_normal_form(IntMatrix::from_rows(rels, k));
    if (snf.rank != k)
        throw InternalInconsistency("abelianization: relation lattice not of full rank");

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < k; ++i) {
        long d = snf.D(i, i).get_si();
        if (d > 1) {
            kept.push_back(i);
            invariants_.push_back(d);
        }
    }
    std::vector<Value> qcoord(static_cast<std::size_t>(qorder));
    for (int q = 0; q < qorder; ++q) {
        IntVector c = exps[static_cast<std::size_t>(q)] * snf.V;
        Value v;
        for (std::size_t idx = 0; idx < kept.size(); ++idx) {
            Integer r;
            mpz_fdiv_r_ui(r.get_mpz_t(), c[kept[idx]].get_mpz_t(), static_cast<unsigned long>(invariants_[idx]));
            v.push_back(r.get_si());
        }
        qcoord[static_cast<std::size_t>(q)] = std::move(v);
    }
    for (Element x : source_.elements())
        projection_[static_cast<std::size_t>(x)] = qcoord[static_cast<std::size_t>(qlabel[static_cast<std::size_t>(x)])];
}

long AbelianQuotient::order() const {
    long o = 1;
    for (long d : invariants_)
        o *= d;
    return o;
}

const AbelianQuotient::Value& AbelianQuotient::project(Element h) const {
    if (!source_.contains(h))
        throw InternalInconsistency("projection of element " + std::to_string(h) + " outside the subgroup");
    return projection_[static_cast<std::size_t>(h)];
}

AbelianQuotient::Value AbelianQuotient::add(const Value& a, const Value& b) const {
    Value c(invariants_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (a[i] + b[i]) % invariants_[i];
    return c;
}

AbelianQuotient::Value AbelianQuotient::negate(const Value& a) const {
    Value c(invariants_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = (invariants_[i] - a[i]) % invariants_[i];
    return c;
}

AbelianQuotient::Value AbelianQuotient::scale(const Value& a, long n) const {
    Value c(invariants_.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        c[i] = ((a[i] * (n % invariants_[i])) % invariants_[i] + invariants_[i]) % invariants_[i];
    return c;
}

std::vector<Element> canonical_transfer_reps(const Subgroup& outer, const Subgroup& inner) {
    const FiniteGroup& g = outer.group();
    std::vector<bool> covered(static_cast<std::size_t>(g.order()), false);
    std::vector<Element> reps;
    for (Element x : outer.elements()) {
        if (covered[static_cast<std::size_t>(x)])
            continue;
        reps.push_back(x);
        for (Element h : inner.elements())
            covered[static_cast<std::size_t>(g.mul(x, h))] = true;
    }
    return reps;
}

Element transfer_product(const Subgroup& outer, const Subgroup& inner, Element x, std::span<const Element> reps) {
    const FiniteGroup& g = outer.group();
    if (!outer.contains(inner))
        throw NotASubgroup("transfer: inner subgroup not contained in outer");
    if (!outer.contains(x))
        throw InputError("transfer: element outside the outer group");
    // rep index of the coset containing each element of `outer`
    std::vector<int> which(static_cast<std::size_t>(g.order()), -1);
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (Element h : inner.elements()) {
            auto& slot = which[static_cast<std::size_t>(g.mul(reps[i], h))];
            if (slot >= 0)
                throw InputError("transfer: representatives share a coset");
            slot = static_cast<int>(i);
        }
    if (static_cast<int>(reps.size()) * inner.order() != outer.order())
        throw InputError("transfer: representative system has wrong size");
    Element prod = g.identity();
    for (Element t : reps) {
        Element xt = g.mul(x, t);
        Element tj = reps[static_cast<std::size_t>(which[static_cast<std::size_t>(xt)])];
        prod = g.mul(prod, g.mul(g.inv(tj), xt));
    }
    return prod;
}

AbelianQuotient::Value transfer(const AbelianQuotient& hab, Element x, std::span<const Element> reps) {
    Subgroup whole = Subgroup::whole(hab.source().parent());
    return hab.project(transfer_product(whole, hab.source(), x, reps));
}

AbelianQuotient::Value transfer(const AbelianQuotient& hab, Element x) {
    Subgroup whole = Subgroup::whole(hab.source().parent());
    std::vector<Element> reps = canonical_transfer_reps(whole, hab.source());
    return hab.project(transfer_product(whole, hab.source(), x, reps));
}

} // namespace cm
