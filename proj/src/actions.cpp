#include "qact/actions.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "qact/error.hpp"
#include "qact/words.hpp"

namespace qact {

// ---- signatures ------------------------------------------------------------

Rational Signature::mu() const {
    Rational m(2 * gamma - 2);
    for (int k : periods) m += Rational(k - 1, k);
    m.canonicalize();
    return m;
}

std::string Signature::to_string() const {
    std::ostringstream os;
    os << "(" << gamma << ";";
    for (std::size_t i = 0; i < periods.size(); ++i) os << (i ? "," : " ") << periods[i];
    os << ")";
    return os.str();
}

Signature Signature::parse(std::string_view text) {
    std::string t;
    for (char c : text)
        if (c != ' ' && c != '(' && c != ')') t += c;
    auto sep = t.find_first_of(":;");
    if (sep == std::string::npos) fail(ErrorKind::InvalidParameter, "signature needs 'gamma:k1,k2,...'");
    Signature s;
    try {
        s.gamma = std::stoi(t.substr(0, sep));
        std::string rest = t.substr(sep + 1);
        std::stringstream ss(rest);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) s.periods.push_back(std::stoi(item));
    } catch (const std::logic_error&) {
        fail(ErrorKind::InvalidParameter, "bad signature '" + std::string(text) + "'");
    }
    if (s.gamma < 0) fail(ErrorKind::InvalidParameter, "negative genus in signature");
    for (int k : s.periods)
        if (k < 2) fail(ErrorKind::InvalidParameter, "periods must be at least 2");
    return s;
}

Signature Signature::sorted() const {
    Signature s = *this;
    std::sort(s.periods.begin(), s.periods.end(), std::greater<>());
    return s;
}

std::optional<long> genus_from_signature(long group_order, const Signature& sig) {
    Rational twice = Rational(group_order) * sig.mu();  // 2g - 2
    if (sig.mu() <= 0 || twice.get_den() != 1) return std::nullopt;
    mpz_class t = twice.get_num();
    if (t % 2 != 0) return std::nullopt;
    long g = mpz_class(t / 2 + 1).get_si();
    if (g < 2) return std::nullopt;
    return g;
}

// ---- skes ------------------------------------------------------------------

std::vector<Element> Ske::images() const {
    std::vector<Element> v = hyperbolic;
    v.insert(v.end(), elliptic.begin(), elliptic.end());
    return v;
}

std::string Ske::to_string() const {
    std::string s = signature.to_string() + " -> (";
    auto im = images();
    for (std::size_t i = 0; i < im.size(); ++i) s += (i ? ", " : "") + group->element_name(im[i]);
    return s + ")";
}

long Ske::genus() const {
    auto g = genus_from_signature(group->order(), signature);
    if (!g) fail(ErrorKind::InvalidParameter, "signature " + signature.to_string() + " is not admissible");
    return *g;
}

Ske make_ske(GroupPtr group, Signature sig, const std::vector<std::string>& elliptic,
             const std::vector<std::string>& hyperbolic) {
    Ske s;
    s.signature = std::move(sig);
    for (const auto& w : hyperbolic) s.hyperbolic.push_back(group->parse_element(w));
    for (const auto& w : elliptic) s.elliptic.push_back(group->parse_element(w));
    s.group = std::move(group);
    return s;
}

SkeCheck validate_ske(const Ske& s) {
    const auto& g = *s.group;
    if (static_cast<int>(s.hyperbolic.size()) != 2 * s.signature.gamma)
        return {false, "expected " + std::to_string(2 * s.signature.gamma) + " hyperbolic images"};
    if (s.elliptic.size() != s.signature.periods.size())
        return {false, "expected " + std::to_string(s.signature.periods.size()) + " elliptic images"};
    for (std::size_t i = 0; i < s.elliptic.size(); ++i)
        if (g.element_order(s.elliptic[i]) != s.signature.periods[i])
            return {false, "x" + std::to_string(i + 1) + " = " + g.element_name(s.elliptic[i]) + " has order " +
                               std::to_string(g.element_order(s.elliptic[i])) + ", expected " +
                               std::to_string(s.signature.periods[i])};
    Element p = g.identity();
    for (std::size_t i = 0; i + 1 < s.hyperbolic.size(); i += 2) p = g.mul(p, g.commutator(s.hyperbolic[i], s.hyperbolic[i + 1]));
    for (auto e : s.elliptic) p = g.mul(p, e);
    if (p != g.identity()) return {false, "product relation fails: product is " + g.element_name(p)};
    auto im = s.images();
    if (!g.generates(im)) return {false, "images do not generate the group"};
    return {true, {}};
}

Ske braid(const Ske& s, int i) {
    if (s.signature.gamma > 0) fail(ErrorKind::Unsupported, "braid moves are implemented for genus-zero quotients only");
    const int n = static_cast<int>(s.elliptic.size());
    if (i < 1 || i >= n) fail(ErrorKind::InvalidParameter, "braid index out of range");
    const auto& g = *s.group;
    Ske t = s;
    const Element a = s.elliptic[i - 1], b = s.elliptic[i];
    t.elliptic[i - 1] = b;
    t.elliptic[i] = g.mul(g.mul(g.inv(b), a), b);
    std::swap(t.signature.periods[i - 1], t.signature.periods[i]);
    return t;
}

Ske apply_automorphism(const Ske& s, const Automorphism& phi) {
    Ske t = s;
    for (auto& e : t.hyperbolic) e = phi(e);
    for (auto& e : t.elliptic) e = phi(e);
    return t;
}

const std::vector<Automorphism>& automorphism_generators(const GroupPtr& g) {
    static std::mutex mu;
    static std::map<const FiniteGroup*, std::pair<GroupPtr, std::vector<Automorphism>>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(g.get());
    if (it != cache.end()) return it->second.second;

    const auto all = automorphisms(*g);
    const int n = g->order();
    auto key = [&](const Automorphism& a) {
        std::vector<std::uint16_t> k(n);
        for (int i = 0; i < n; ++i) k[i] = a.images[i].index;
        return k;
    };
    std::vector<Automorphism> gens;
    std::set<std::vector<std::uint16_t>> closure;
    Automorphism id;
    for (auto e : g->elements()) id.images.push_back(e);
    closure.insert(key(id));
    for (const auto& phi : all) {
        if (closure.count(key(phi))) continue;
        gens.push_back(phi);
        closure.clear();
        closure.insert(key(id));
        std::deque<Automorphism> queue{id};
        while (!queue.empty()) {
            Automorphism a = queue.front();
            queue.pop_front();
            for (const auto& s : gens) {
                Automorphism c;
                c.images.resize(n);
                for (int i = 0; i < n; ++i) c.images[i] = s(a.images[i]);
                if (closure.insert(key(c)).second) queue.push_back(std::move(c));
            }
        }
    }
    if (closure.size() != all.size()) fail(ErrorKind::Internal, "automorphism closure mismatch");
    auto& slot = cache[g.get()];
    slot.first = g;
    slot.second = std::move(gens);
    return slot.second;
}

// ---- enumeration -----------------------------------------------------------

namespace {

using Tuple = std::vector<Element>;

// Visits the image tuples (hyperbolic then elliptic) of every ske with this ordered signature.
long enumerate_tuples(const FiniteGroup& g, const Signature& sig, const EnumerationOptions& opt,
                      const std::function<bool(const Tuple&)>& visit) {
    const int gam = sig.gamma;
    const int s = static_cast<int>(sig.periods.size());
    const int slots = 2 * gam + s;
    std::vector<Element> all = g.elements();
    std::vector<std::vector<Element>> cand(s);
    for (int i = 0; i < s; ++i)
        for (auto e : all)
            if (g.element_order(e) == sig.periods[i]) cand[i].push_back(e);
    if (opt.shuffle_seed) {
        std::mt19937 rng(*opt.shuffle_seed);
        std::shuffle(all.begin(), all.end(), rng);
        for (auto& c : cand) std::shuffle(c.begin(), c.end(), rng);
    }
    for (int i = 0; i + 1 < s; ++i)
        if (cand[i].empty()) return 0;

    Tuple t(slots);
    long count = 0;
    bool stop = false;
    auto finish = [&] {
        if (!g.generates(t)) return;
        if (++count > opt.max_skes) fail(ErrorKind::Resource, "more than " + std::to_string(opt.max_skes) + " skes");
        if (!visit(t)) stop = true;
    };
    std::function<void(int, Element)> rec = [&](int slot, Element prod) {
        if (stop) return;
        if (slot < 2 * gam) {
            if (slot % 2 == 0) {
                for (auto a : all) {
                    t[slot] = a;
                    rec(slot + 1, prod);
                    if (stop) return;
                }
            } else {
                for (auto b : all) {
                    t[slot] = b;
                    rec(slot + 1, g.mul(prod, g.commutator(t[slot - 1], b)));
                    if (stop) return;
                }
            }
            return;
        }
        const int e = slot - 2 * gam;
        if (s == 0) {
            if (prod == g.identity()) finish();
            return;
        }
        if (e == s - 1) {
            const Element last = g.inv(prod);
            if (g.element_order(last) != sig.periods[e]) return;
            t[slot] = last;
            finish();
            return;
        }
        for (auto c : cand[e]) {
            t[slot] = c;
            rec(slot + 1, g.mul(prod, c));
            if (stop) return;
        }
    };
    rec(0, g.identity());
    return count;
}

Ske tuple_to_ske(const GroupPtr& g, const Signature& sig, const Tuple& t) {
    Ske s;
    s.group = g;
    s.signature = sig;
    s.hyperbolic.assign(t.begin(), t.begin() + 2 * sig.gamma);
    s.elliptic.assign(t.begin() + 2 * sig.gamma, t.end());
    return s;
}

std::uint64_t pack(const Tuple& t) {
    if (t.size() > 9) fail(ErrorKind::Unsupported, "at most nine generators per ske");
    std::uint64_t k = 0;
    for (auto e : t) k = (k << 7) | e.index;
    return k;
}

Tuple unpack(std::uint64_t k, int slots) {
    Tuple t(slots);
    for (int i = slots - 1; i >= 0; --i) {
        t[i] = Element{static_cast<std::uint16_t>(k & 0x7f)};
        k >>= 7;
    }
    return t;
}

// All moves generating topological equivalence for the given shape.
std::vector<Tuple> moves(const FiniteGroup& g, const std::vector<Automorphism>& auts, int gamma, const Tuple& t) {
    std::vector<Tuple> out;
    const int slots = static_cast<int>(t.size());
    const int first = 2 * gamma;
    for (int i = first; i + 1 < slots; ++i) {
        Tuple u = t;
        u[i] = t[i + 1];
        u[i + 1] = g.mul(g.mul(g.inv(t[i + 1]), t[i]), t[i + 1]);
        out.push_back(std::move(u));
    }
    if (gamma > 1) fail(ErrorKind::Unsupported, "topological classification is implemented for gamma <= 1");
    if (gamma == 1) {
        Tuple u = t;
        u[1] = g.mul(t[1], t[0]);  // (alpha, beta alpha)
        out.push_back(u);
        u = t;
        u[0] = g.mul(t[0], t[1]);  // (alpha beta, beta)
        out.push_back(u);
    }
    for (const auto& phi : auts) {
        Tuple u = t;
        for (auto& e : u) e = phi(e);
        out.push_back(std::move(u));
    }
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace

long enumerate_skes(const GroupPtr& g, const Signature& sig, const std::function<bool(const Ske&)>& visit,
                    const EnumerationOptions& opt) {
    return enumerate_tuples(*g, sig, opt, [&](const Tuple& t) { return visit(tuple_to_ske(g, sig, t)); });
}

bool has_ske(const GroupPtr& g, const Signature& sig, const EnumerationOptions& opt) {
    return enumerate_tuples(*g, sig, opt, [](const Tuple&) { return false; }) > 0;
}

OrbitReport classify(const GroupPtr& g, const Signature& sig, const EnumerationOptions& opt) {
    if (g->order() > kMaxGenericOrder) fail(ErrorKind::InvalidParameter, "classification limited to groups of order <= 64");
    if (sig.gamma > 1) fail(ErrorKind::Unsupported, "classification limited to gamma <= 1");
    const auto& G = *g;
    const int slots = 2 * sig.gamma + static_cast<int>(sig.periods.size());

    // every ordering of the periods, since braids permute them
    std::vector<int> perm = sig.periods;
    std::sort(perm.begin(), perm.end());
    std::vector<std::uint64_t> keys;
    std::vector<char> original;
    do {
        Signature s2{sig.gamma, perm};
        const bool is_original = perm == sig.periods;
        enumerate_tuples(G, s2, opt, [&](const Tuple& t) {
            keys.push_back(pack(t));
            original.push_back(is_original);
            if (static_cast<long>(keys.size()) > opt.max_skes)
                fail(ErrorKind::Resource, "more than " + std::to_string(opt.max_skes) + " skes");
            return true;
        });
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::unordered_map<std::uint64_t, int> index;
    index.reserve(keys.size() * 2);
    for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], static_cast<int>(i));

    const auto& auts = automorphism_generators(g);
    UnionFind uf(keys.size());
    std::vector<int> order(keys.size());
    std::iota(order.begin(), order.end(), 0);
    if (opt.shuffle_seed) std::shuffle(order.begin(), order.end(), std::mt19937(*opt.shuffle_seed + 1));
    for (int i : order) {
        for (const auto& u : moves(G, auts, sig.gamma, unpack(keys[i], slots))) {
            auto it = index.find(pack(u));
            if (it == index.end()) fail(ErrorKind::Internal, "a move left the set of valid skes");
            uf.unite(i, it->second);
        }
    }

    std::map<int, std::pair<std::uint64_t, long>> comps;  // root -> (least original key, size)
    OrbitReport r;
    r.signature = sig;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const int root = uf.find(static_cast<int>(i));
        auto [it, fresh] = comps.try_emplace(root, std::numeric_limits<std::uint64_t>::max(), 0);
        if (!original[i]) continue;
        ++r.total_skes;
        it->second.first = std::min(it->second.first, keys[i]);
        ++it->second.second;
    }
    std::vector<std::pair<std::uint64_t, long>> reps;
    for (const auto& [_, v] : comps) reps.push_back(v);
    std::sort(reps.begin(), reps.end());
    for (const auto& [k, size] : reps) {
        r.representatives.push_back(tuple_to_ske(g, sig, unpack(k, slots)));
        r.orbit_sizes.push_back(size);
    }
    r.orbit_count = static_cast<int>(reps.size());
    return r;
}

bool equivalent(const Ske& a, const Ske& b, long max_states) {
    if (a.group.get() != b.group.get()) fail(ErrorKind::InvalidParameter, "skes live on different groups");
    if (a.signature.gamma != b.signature.gamma || a.signature.sorted() != b.signature.sorted()) return false;
    const auto& G = *a.group;
    const auto& auts = automorphism_generators(a.group);
    const Tuple start = a.images();
    const int slots = static_cast<int>(start.size());
    const std::uint64_t target = pack(b.images());
    std::unordered_set<std::uint64_t> seen{pack(start)};
    std::deque<std::uint64_t> queue{pack(start)};
    while (!queue.empty()) {
        const auto k = queue.front();
        queue.pop_front();
        if (k == target) return true;
        for (const auto& u : moves(G, auts, a.signature.gamma, unpack(k, slots))) {
            auto pu = pack(u);
            if (seen.insert(pu).second) {
                if (static_cast<long>(seen.size()) > max_states) fail(ErrorKind::Resource, "orbit search budget exceeded");
                queue.push_back(pu);
            }
        }
    }
    return false;
}

// ---- quotients ---------------------------------------------------------------

QuotientData quotient_data(const Ske& s, const Subgroup& k) {
    const auto& g = *s.group;
    const auto reps = g.left_coset_representatives(k);
    const int d = static_cast<int>(reps.size());
    std::vector<int> coset(g.order(), -1);
    for (int i = 0; i < d; ++i)
        for (auto h : k.elements()) coset[g.mul(reps[i], h).index] = i;

    QuotientData q;
    q.degree = d;
    long twice = static_cast<long>(d) * (2 * s.signature.gamma - 2);  // 2 g_K - 2
    for (std::size_t i = 0; i < s.elliptic.size(); ++i) {
        const Element e = s.elliptic[i];
        const int order = g.element_order(e);
        std::vector<char> done(d, 0);
        int cycles = 0;
        for (int c = 0; c < d; ++c) {
            if (done[c]) continue;
            ++cycles;
            int len = 0, cur = c;
            while (!done[cur]) {
                done[cur] = 1;
                ++len;
                cur = coset[g.mul(e, reps[cur]).index];
            }
            if (order / len > 1) q.periods.push_back(order / len);
        }
        twice += d - cycles;
    }
    if (twice % 2 != 0 || twice < -2) fail(ErrorKind::Internal, "Riemann-Hurwitz gave an impossible quotient genus");
    q.genus = twice / 2 + 1;
    return q;
}

bool is_genus_zero_action(const Ske& s) {
    const auto& g = *s.group;
    // every nontrivial subgroup contains one of prime order, and genera only drop in quotients
    for (auto e : g.elements()) {
        const int o = g.element_order(e);
        bool prime = o > 1;
        for (int p = 2; p * p <= o; ++p)
            if (o % p == 0) prime = false;
        if (!prime) continue;
        const Element gen[1] = {e};
        if (quotient_data(s, g.generated_subgroup(gen)).genus != 0) return false;
    }
    return true;
}

// ---- the quaternion catalogue ------------------------------------------------

Ske family_ske(const QuaternionGroup& q, std::string_view family, int param) {
    const int n = q.n();
    const long m = q.m();
    auto x = [&](long a) { return q.element(a, 0); };
    auto xy = [&](long a) { return q.element(a, 1); };
    Ske s;
    s.group = q.group_ptr();
    if (family == "F0" || family == "F0x") {
        s.signature = Signature{1, {1 << (n - 2)}};
        s.hyperbolic = {family == "F0" ? q.y() : q.x(), xy(1)};
        s.elliptic = {x(2)};
    } else if (family == "F1") {
        if (param % 2 != 0) fail(ErrorKind::InvalidParameter, "p must be even");
        s.signature = Signature{0, {4, 4, 4, 4}};
        s.elliptic = {xy(1), q.y(), xy(param), xy(param + 1)};
    } else if (family == "F2") {
        if (param % 2 != 0) fail(ErrorKind::InvalidParameter, "p must be even");
        s.signature = Signature{0, {static_cast<int>(m), static_cast<int>(m), 4, 4}};
        s.elliptic = {x(1), x(param - 1 + m / 2), q.y(), xy(param)};
    } else if (family == "C") {
        const int k = param;
        if (k < 2 || k > n - 1) fail(ErrorKind::InvalidParameter, "k must lie in 2..n-1");
        s.signature = Signature{0, {static_cast<int>(m), 1 << (n - k), 4, 4}};
        s.elliptic = {x(1 - (1L << (k - 1)) - m / 2), x(1L << (k - 1)), q.y(), xy(1)};
    } else {
        fail(ErrorKind::InvalidParameter, "unknown family '" + std::string(family) + "'");
    }
    return s;
}

namespace {

std::vector<int> element_orders_above_one(const FiniteGroup& g) {
    std::set<int> s;
    for (auto e : g.elements())
        if (g.element_order(e) > 1) s.insert(g.element_order(e));
    return {s.begin(), s.end()};
}

// nonincreasing multisets of size l drawn from values
void multisets(std::vector<int> values, int l, const std::function<void(const std::vector<int>&)>& f) {
    std::sort(values.begin(), values.end(), std::greater<>());
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == l) {
            f(cur);
            return;
        }
        for (std::size_t i = start; i < values.size(); ++i) {
            cur.push_back(values[i]);
            rec(i);
            cur.pop_back();
        }
    };
    rec(0);
}

struct ListedFamily {
    std::string name;
    Signature sig;
    int bound;
};

std::vector<ListedFamily> listed_families(int n) {
    const int m = 1 << (n - 1);
    std::vector<ListedFamily> out;
    const std::string ns = std::to_string(n);
    out.push_back({"F_{" + ns + ",0}", Signature{1, {1 << (n - 2)}}, 1});
    if (n == 3) {
        out.push_back({"F_{3,1}=F_{3,2}", Signature{0, {4, 4, 4, 4}}, 1});
    } else {
        out.push_back({"F_{" + ns + ",1}", Signature{0, {4, 4, 4, 4}}, 1});
        out.push_back({"F_{" + ns + ",2}", Signature{0, {m, m, 4, 4}}.sorted(), 1 << (n - 2)});
    }
    for (int k = 2; k <= n - 1; ++k)
        out.push_back({"C_{" + ns + "," + std::to_string(k) + "}", Signature{0, {m, 1 << (n - k), 4, 4}}.sorted(),
                       k == n - 1 ? 1 : 1 << (n - k - 1)});
    return out;
}

}  // namespace

std::vector<FamilyEntry> one_dimensional_families(int n, bool count_orbits, const EnumerationOptions& opt) {
    if (n < 3 || n > 6) fail(ErrorKind::InvalidParameter, "n must lie in 3..6");
    QuaternionGroup q(n);
    const auto gp = q.group_ptr();
    const auto orders = element_orders_above_one(q.group());
    std::vector<Signature> candidates;
    for (int k : orders) candidates.push_back(Signature{1, {k}});
    multisets(orders, 4, [&](const std::vector<int>& p) { candidates.push_back(Signature{0, p}); });

    std::vector<FamilyEntry> found;
    for (const auto& sig : candidates) {
        auto genus = genus_from_signature(q.group().order(), sig);
        if (!genus || !has_ske(gp, sig, opt)) continue;
        FamilyEntry e;
        e.signature = sig;
        e.genus = *genus;
        for (const auto& f : listed_families(n))
            if (f.sig.sorted() == sig.sorted()) {
                e.name = f.name;
                e.orbit_bound = f.bound;
            }
        if (count_orbits) {
            auto rep = classify(gp, sig, opt);
            e.orbit_count = rep.orbit_count;
            e.ske_count = rep.total_skes;
        } else {
            e.ske_count = enumerate_skes(gp, sig, [](const Ske&) { return true; }, opt);
        }
        found.push_back(std::move(e));
    }
    // listed families first, in their usual order
    std::vector<FamilyEntry> out;
    for (const auto& f : listed_families(n))
        for (auto& e : found)
            if (e.name == f.name) out.push_back(e);
    for (auto& e : found)
        if (e.name.empty()) out.push_back(e);
    return out;
}

Signature sigma_b(int n, int b) {
    Signature s;
    s.periods.assign(b, 2);
    s.periods.push_back(4);
    s.periods.push_back(4);
    s.periods.push_back(1 << (n - 1));
    return s;
}

Ske genus_zero_witness(const QuaternionGroup& q, int b) {
    const auto& g = q.group();
    Ske s;
    s.group = q.group_ptr();
    s.signature = sigma_b(q.n(), b);
    const Element y2 = g.mul(q.y(), q.y());
    s.elliptic.assign(b, y2);
    if (b % 2 == 0) {
        s.elliptic.push_back(q.y());
        s.elliptic.push_back(g.mul(g.inv(q.y()), g.inv(q.x())));
    } else {
        s.elliptic.push_back(g.mul(g.inv(q.x()), q.y()));
        s.elliptic.push_back(q.y());
    }
    s.elliptic.push_back(q.x());
    return s;
}

std::vector<GenusZeroEntry> genus_zero_actions(int n, int max_b, long max_skes_per_b) {
    if (n < 3) fail(ErrorKind::InvalidParameter, "n must be at least 3");
    if (max_b < 0) fail(ErrorKind::InvalidParameter, "max_b must be non-negative");
    QuaternionGroup q(n);
    std::vector<GenusZeroEntry> out;
    for (int b = 0; b <= max_b; ++b) {
        GenusZeroEntry e;
        e.b = b;
        e.signature = sigma_b(n, b);
        e.genus = genus_from_signature(q.group().order(), e.signature).value_or(-1);
        e.witness = genus_zero_witness(q, b);
        e.witness_valid = validate_ske(e.witness).valid && is_genus_zero_action(e.witness);
        e.all_genus_zero = true;
        bool truncated = false;
        EnumerationOptions opt;
        opt.max_skes = max_skes_per_b + 1;
        enumerate_skes(
            q.group_ptr(), e.signature,
            [&](const Ske& s) {
                if (e.skes_checked == max_skes_per_b) {
                    truncated = true;
                    return false;
                }
                ++e.skes_checked;
                if (!is_genus_zero_action(s)) e.all_genus_zero = false;
                return true;
            },
            opt);
        e.complete = !truncated;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<GenusZeroCensusRow> genus_zero_census(int n, int max_periods, bool exhaustive) {
    QuaternionGroup q(n);
    const auto gp = q.group_ptr();
    const auto orders = element_orders_above_one(q.group());
    std::vector<GenusZeroCensusRow> out;
    auto consider = [&](const Signature& sig) {
        if (!genus_from_signature(q.group().order(), sig)) return;
        GenusZeroCensusRow r;
        enumerate_skes(gp, sig, [&](const Ske& s) {
            ++r.skes;
            if (is_genus_zero_action(s)) ++r.genus_zero_skes;
            return exhaustive;
        });
        if (r.skes == 0) return;
        r.signature = sig;
        r.genus_zero = r.genus_zero_skes == r.skes;
        const int twos = static_cast<int>(std::count(sig.periods.begin(), sig.periods.end(), 2));
        r.is_sigma_b = sig.gamma == 0 && sig.sorted() == sigma_b(n, twos).sorted();
        out.push_back(r);
    };
    for (int l = 3; l <= max_periods; ++l) multisets(orders, l, [&](const std::vector<int>& p) { consider(Signature{0, p}); });
    for (int l = 1; l <= std::min(2, max_periods); ++l)
        multisets(orders, l, [&](const std::vector<int>& p) { consider(Signature{1, p}); });
    return out;
}

// ---- extensions ----------------------------------------------------------------

ExtensionReport check_extension(const Ske& theta, const Ske& theta_prime, const std::vector<std::string>& words,
                                const Signature& restricted_signature) {
    const auto& gp = *theta_prime.group;
    struct Ops {
        const FiniteGroup& g;
        const Ske& s;
        Element identity() const { return g.identity(); }
        Element mul(Element a, Element b) const { return g.mul(a, b); }
        Element inv(Element a) const { return g.inv(a); }
        Element lookup(const std::string& sym) const {
            if (sym.size() >= 2 && sym[0] == 'y') {
                std::size_t i = std::stoul(sym.substr(1));
                if (i >= 1 && i <= s.elliptic.size()) return s.elliptic[i - 1];
            }
            if (sym.size() >= 2 && (sym[0] == 'a' || sym[0] == 'b')) {
                std::size_t i = std::stoul(sym.substr(1));
                if (i >= 1 && 2 * i <= s.hyperbolic.size()) return s.hyperbolic[2 * (i - 1) + (sym[0] == 'b')];
            }
            fail(ErrorKind::InvalidParameter, "unknown generator '" + sym + "' in embedding word");
        }
    };
    const Ops ops{gp, theta_prime};
    std::vector<Element> im;
    for (const auto& w : words) im.push_back(evaluate_word(parse_word(w), ops));
    if (static_cast<int>(im.size()) != 2 * restricted_signature.gamma + static_cast<int>(restricted_signature.periods.size()))
        fail(ErrorKind::InvalidParameter, "number of words does not match the restricted signature");

    const Subgroup h = gp.generated_subgroup(im);
    const FiniteGroup hg = FiniteGroup::from_subgroup(gp, h, "image");
    auto iso = find_isomorphism(hg, *theta.group);
    if (!iso) fail(ErrorKind::InvalidEmbedding, "the words generate a subgroup of order " + std::to_string(h.order()) +
                                                    " not isomorphic to " + theta.group->name());
    std::vector<int> pos(gp.order(), -1);
    for (int i = 0; i < h.order(); ++i) pos[h.elements()[i].index] = i;

    ExtensionReport r;
    r.image_isomorphic = true;
    r.restriction.group = theta.group;
    r.restriction.signature = restricted_signature;
    for (std::size_t i = 0; i < im.size(); ++i) {
        const Element e = (*iso)[pos[im[i].index]];
        if (static_cast<int>(i) < 2 * restricted_signature.gamma)
            r.restriction.hyperbolic.push_back(e);
        else
            r.restriction.elliptic.push_back(e);
    }
    r.restriction_valid = validate_ske(r.restriction).valid;
    r.equivalent = r.restriction_valid && equivalent(r.restriction, theta);
    r.index = gp.order() / h.order();
    r.mu_ratio = restricted_signature.mu() / theta_prime.signature.mu();
    r.mu_matches = r.mu_ratio == Rational(r.index);
    return r;
}

std::vector<ExtensionCase> extension_cases(int n) {
    QuaternionGroup q(n);
    const int m = q.m();
    auto g1 = std::make_shared<const FiniteGroup>(build_g1(n));
    auto g2 = std::make_shared<const FiniteGroup>(build_g2(n));
    std::vector<ExtensionCase> out;

    out.push_back({"F0", "G1", family_ske(q, "F0"),
                   make_ske(g1, Signature{0, {2, 2, 2, m}}, {"z", "y*z", "x*y*z", "x*z"}),
                   {"y1*y2", "y4*y2", "y4^2"}, Signature{1, {m / 2}}});
    out.push_back({"F1", "G1", family_ske(q, "F1", m / 2),
                   make_ske(g1, Signature{0, {2, 2, 4, 4}}, {"z*y", "x*y*z", "x*y", "y"}),
                   {"y3", "y4", "y1*y4*y1", "y2*y3*y2"}, Signature{0, {4, 4, 4, 4}}});
    const std::vector<std::string> f2_words{"y2*y4*y2", "y4", "(y1*y2)*y3*(y1*y2)^-1", "y2*y3*y2"};
    const std::vector<std::string> f2_images{"z", "z*y", "x*y^-1", "x"};
    out.push_back({"F2", "G1", family_ske(q, "F2", m / 2), make_ske(g1, Signature{0, {2, 2, 4, m}}, f2_images), f2_words,
                   Signature{0, {m, m, 4, 4}}});
    out.push_back({"F2", "G2", family_ske(q, "F2", 2), make_ske(g2, Signature{0, {2, 2, 4, m}}, f2_images), f2_words,
                   Signature{0, {m, m, 4, 4}}});
    return out;
}

}  // namespace qact
