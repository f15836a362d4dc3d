#include "qact/groups.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#include "qact/error.hpp"
#include "qact/words.hpp"

namespace qact {

namespace {

using Exps = std::vector<int>;

std::pair<std::uint64_t, std::uint64_t> set_key(const ElementSet& s) {
    std::uint64_t lo = 0, hi = 0;
    for (int i = 0; i < 64; ++i) {
        if (s.test(i)) lo |= (std::uint64_t{1} << i);
        if (s.test(i + 64)) hi |= (std::uint64_t{1} << i);
    }
    return {lo, hi};
}

struct SetKeyLess {
    bool operator()(const ElementSet& a, const ElementSet& b) const { return set_key(a) < set_key(b); }
};

// Collection in a consistent polycyclic presentation.
class Collector {
public:
    explicit Collector(const PcPresentation& pc) : pc_(pc), k_(static_cast<int>(pc.letters.size())) {}

    Exps identity() const { return Exps(k_, 0); }

    Exps unit(int i) const {
        Exps e = identity();
        e[i] = 1;
        return e;
    }

    Exps mul(Exps u, const Exps& v) {
        for (int l = 0; l < k_; ++l)
            for (int t = 0; t < v[l]; ++t) u = mul_gen(u, l);
        return u;
    }

    // u * g_i
    Exps mul_gen(const Exps& u, int i) {
        bool suffix_trivial = true;
        for (int j = i + 1; j < k_; ++j) suffix_trivial = suffix_trivial && u[j] == 0;
        if (suffix_trivial) {
            Exps r = u;
            if (++r[i] < pc_.relative_orders[i]) return r;
            r[i] = 0;
            return mul(r, pc_.powers[i]);
        }
        // u = prefix * suffix, suffix in <g_{i+1}..>: u g_i = prefix (suffix g_i suffix^-1) suffix
        Exps w = unit(i);
        for (int j = k_ - 1; j > i; --j)
            for (int t = 0; t < u[j]; ++t) w = conj_gen(j, w);
        Exps prefix = u;
        for (int j = i + 1; j < k_; ++j) prefix[j] = 0;
        Exps r = mul(prefix, w);
        for (int j = i + 1; j < k_; ++j) r[j] = u[j];
        return r;
    }

private:
    // g_j w g_j^-1 for w supported below j
    Exps conj_gen(int j, const Exps& w) {
        Exps r = identity();
        for (int l = 0; l < j; ++l)
            for (int t = 0; t < w[l]; ++t) r = mul(r, pc_.conjugates[j][l]);
        return r;
    }

    const PcPresentation& pc_;
    int k_;
};

int exps_to_index(const Exps& e, const std::vector<int>& radix) {
    int idx = 0;
    for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i) idx = idx * radix[i] + e[i];
    return idx;
}

Exps index_to_exps(int idx, const std::vector<int>& radix) {
    Exps e(radix.size());
    for (std::size_t i = 0; i < radix.size(); ++i) {
        e[i] = idx % radix[i];
        idx /= radix[i];
    }
    return e;
}

std::string exps_name(const Exps& e, const std::vector<std::string>& letters) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += letters[i];
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Rank over F2 of bitmask vectors.
int f2_rank(std::vector<std::uint32_t> v) {
    int rank = 0;
    for (int bit = 31; bit >= 0; --bit) {
        auto it = std::find_if(v.begin(), v.end(), [&](std::uint32_t m) { return (m >> bit) & 1U; });
        if (it == v.end()) continue;
        std::uint32_t piv = *it;
        v.erase(it);
        for (auto& m : v)
            if ((m >> bit) & 1U) m ^= piv;
        ++rank;
    }
    return rank;
}

}  // namespace

// ---- Subgroup --------------------------------------------------------------

Subgroup::Subgroup(std::vector<Element> elements, std::string label) : elements_(std::move(elements)), label_(std::move(label)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (auto e : elements_) mask_.set(e.index);
}

Subgroup::Subgroup(const ElementSet& mask, int group_order, std::string label) : mask_(mask), label_(std::move(label)) {
    for (int i = 0; i < group_order; ++i)
        if (mask_.test(i)) elements_.push_back(Element{static_cast<std::uint16_t>(i)});
}

// ---- FiniteGroup construction ------------------------------------------------

FiniteGroup FiniteGroup::from_pc(std::string name, PcPresentation pc, std::vector<std::string> relators,
                                 std::optional<int> expected_order) {
    const int k = static_cast<int>(pc.letters.size());
    if (k == 0) fail(ErrorKind::InvalidParameter, "presentation without generators");
    if (static_cast<int>(pc.relative_orders.size()) != k || static_cast<int>(pc.powers.size()) != k ||
        static_cast<int>(pc.conjugates.size()) != k)
        fail(ErrorKind::InvalidParameter, "inconsistent presentation sizes");
    long order = 1;
    for (int p : pc.relative_orders) {
        if (p < 2) fail(ErrorKind::InvalidParameter, "relative order < 2");
        order *= p;
        if (order > kMaxGroupOrder) fail(ErrorKind::InvalidParameter, name + ": order exceeds " + std::to_string(kMaxGroupOrder));
    }

    FiniteGroup g;
    g.name_ = std::move(name);
    g.order_ = static_cast<int>(order);
    g.relators_ = std::move(relators);
    g.letters_ = pc.letters;
    const auto& radix = pc.relative_orders;

    g.exps_.resize(order);
    g.names_.resize(order);
    for (int i = 0; i < order; ++i) {
        g.exps_[i] = index_to_exps(i, radix);
        g.names_[i] = exps_name(g.exps_[i], pc.letters);
    }

    Collector col(pc);
    g.table_.assign(static_cast<std::size_t>(order) * order, 0);
    // row-by-generator recursion: a * (b g_l) = (a * b) * g_l, following the normal form of b
    std::vector<std::vector<int>> right_gen(k, std::vector<int>(order));
    for (int l = 0; l < k; ++l)
        for (int a = 0; a < order; ++a) right_gen[l][a] = exps_to_index(col.mul_gen(g.exps_[a], l), radix);
    for (int a = 0; a < order; ++a) {
        for (int b = 0; b < order; ++b) {
            int acc = a;
            const auto& e = g.exps_[b];
            for (int l = 0; l < k; ++l)
                for (int t = 0; t < e[l]; ++t) acc = right_gen[l][acc];
            g.table_[static_cast<std::size_t>(a) * order + b] = static_cast<std::uint16_t>(acc);
        }
    }
    for (int l = 0; l < k; ++l) g.generators_.push_back(Element{static_cast<std::uint16_t>(exps_to_index(col.unit(l), radix))});
    g.pc_ = std::move(pc);

    g.finish_construction();
    if (!g.is_latin_square()) fail(ErrorKind::Internal, g.name_ + ": product table is not a Latin square");
    if (!g.is_associative()) fail(ErrorKind::Internal, g.name_ + ": presentation is inconsistent (associativity fails)");
    if (!g.relators_hold()) fail(ErrorKind::Internal, g.name_ + ": a defining relation does not hold");
    if (expected_order && *expected_order != g.order_)
        fail(ErrorKind::Internal, g.name_ + ": unexpected order " + std::to_string(g.order_));
    return g;
}

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::uint16_t> table, std::vector<std::string> names,
                                    std::vector<Element> generators, std::vector<std::string> generator_letters,
                                    std::vector<std::string> relators) {
    const std::size_t n = names.size();
    if (n == 0 || n > static_cast<std::size_t>(kMaxGroupOrder) || table.size() != n * n)
        fail(ErrorKind::InvalidParameter, "bad table dimensions");
    if (generators.size() != generator_letters.size())
        fail(ErrorKind::InvalidParameter, "generator letters do not match generators");
    FiniteGroup g;
    g.name_ = std::move(name);
    g.order_ = static_cast<int>(n);
    g.table_ = std::move(table);
    g.names_ = std::move(names);
    g.generators_ = std::move(generators);
    g.letters_ = std::move(generator_letters);
    g.relators_ = std::move(relators);
    for (auto v : g.table_)
        if (v >= n) fail(ErrorKind::InvalidParameter, "table entry out of range");
    for (std::size_t b = 0; b < n; ++b)
        if (g.table_[b] != b || g.table_[b * n] != b) fail(ErrorKind::InvalidParameter, "element 0 is not the identity");
    if (!g.is_latin_square()) fail(ErrorKind::InvalidParameter, g.name_ + ": table is not a Latin square");
    if (!g.is_associative()) fail(ErrorKind::InvalidParameter, g.name_ + ": table is not associative");
    g.finish_construction();
    if (!g.relators_hold()) fail(ErrorKind::InvalidParameter, g.name_ + ": a relation does not hold");
    if (!g.generators_.empty() && g.generated_subgroup(g.generators_).order() != g.order_)
        fail(ErrorKind::InvalidParameter, g.name_ + ": generators do not generate");
    return g;
}

FiniteGroup FiniteGroup::from_subgroup(const FiniteGroup& parent, const Subgroup& h, std::string name) {
    const auto& el = h.elements();
    const int n = h.order();
    std::vector<int> pos(parent.order(), -1);
    for (int i = 0; i < n; ++i) pos[el[i].index] = i;
    if (n == 0 || el[0] != parent.identity()) fail(ErrorKind::InvalidParameter, "subgroup must contain the identity");
    std::vector<std::uint16_t> table(static_cast<std::size_t>(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int p = pos[parent.mul(el[a], el[b]).index];
            if (p < 0) fail(ErrorKind::InvalidParameter, "element set is not closed");
            table[static_cast<std::size_t>(a) * n + b] = static_cast<std::uint16_t>(p);
        }
    std::vector<std::string> names;
    for (auto e : el) names.push_back(parent.element_name(e));
    return from_table(std::move(name), std::move(table), std::move(names), {}, {});
}

void FiniteGroup::finish_construction() {
    const int n = order_;
    inverse_.assign(n, Element{});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (table_[static_cast<std::size_t>(a) * n + b] == 0) {
                inverse_[a] = Element{static_cast<std::uint16_t>(b)};
                break;
            }
    orders_.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        Element e{static_cast<std::uint16_t>(a)}, p = e;
        int o = 1;
        while (p != identity()) {
            p = mul(p, e);
            ++o;
        }
        orders_[a] = o;
    }
    class_of_.assign(n, -1);
    classes_.clear();
    for (int a = 0; a < n; ++a) {
        if (class_of_[a] >= 0) continue;
        std::vector<Element> cls;
        Element e{static_cast<std::uint16_t>(a)};
        for (int g = 0; g < n; ++g) {
            Element c = conjugate(Element{static_cast<std::uint16_t>(g)}, e);
            if (class_of_[c.index] < 0) {
                class_of_[c.index] = static_cast<int>(classes_.size());
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        classes_.push_back(std::move(cls));
    }

    two_group_ = is_power_of_two(n);
    frattini_coords_.assign(n, 0);
    frattini_rank_ = 0;
    if (two_group_ && n > 1) {
        std::vector<Element> squares;
        for (int a = 0; a < n; ++a) squares.push_back(mul(Element{static_cast<std::uint16_t>(a)}, Element{static_cast<std::uint16_t>(a)}));
        Subgroup phi = generated_subgroup(squares);
        // coset label of each element, then an F2 basis of G/Phi chosen greedily
        std::vector<int> coset(n, -1);
        std::vector<Element> reps;
        for (int a = 0; a < n; ++a) {
            if (coset[a] >= 0) continue;
            for (auto f : phi.elements()) coset[mul(Element{static_cast<std::uint16_t>(a)}, f).index] = static_cast<int>(reps.size());
            reps.push_back(Element{static_cast<std::uint16_t>(a)});
        }
        std::vector<int> coset_mask(reps.size(), -1);
        coset_mask[coset[0]] = 0;
        for (int a = 0; a < n; ++a) {
            if (coset_mask[coset[a]] >= 0) continue;
            const int bit = frattini_rank_++;
            std::vector<std::pair<int, int>> spanned;
            for (std::size_t c = 0; c < reps.size(); ++c)
                if (coset_mask[c] >= 0) spanned.emplace_back(static_cast<int>(c), coset_mask[c]);
            for (auto [c, m] : spanned) {
                int prod = coset[mul(reps[c], Element{static_cast<std::uint16_t>(a)}).index];
                coset_mask[prod] = m | (1 << bit);
            }
        }
        for (int a = 0; a < n; ++a) frattini_coords_[a] = static_cast<std::uint32_t>(coset_mask[coset[a]]);
    }
    if (generators_.empty()) generators_ = minimal_generating_set();
}

// ---- element access ----------------------------------------------------------

std::vector<Element> FiniteGroup::elements() const {
    std::vector<Element> v(order_);
    for (int i = 0; i < order_; ++i) v[i] = Element{static_cast<std::uint16_t>(i)};
    return v;
}

Element FiniteGroup::pow(Element a, long k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    k %= orders_[a.index];
    Element r = identity();
    for (long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

Element FiniteGroup::generator(std::string_view letter) const {
    for (std::size_t i = 0; i < letters_.size(); ++i)
        if (letters_[i] == letter) return generators_[i];
    fail(ErrorKind::InvalidParameter, "unknown generator '" + std::string(letter) + "' in " + name_);
}

Element FiniteGroup::parse_element(std::string_view word) const {
    for (int i = 0; i < order_; ++i)
        if (names_[i] == word) return Element{static_cast<std::uint16_t>(i)};
    struct Ops {
        const FiniteGroup* g;
        Element identity() const { return g->identity(); }
        Element mul(Element a, Element b) const { return g->mul(a, b); }
        Element inv(Element a) const { return g->inv(a); }
        Element lookup(const std::string& s) const { return g->generator(s); }
    };
    return evaluate_word(parse_word(word), Ops{this});
}

const PcPresentation& FiniteGroup::pc() const {
    if (!pc_) fail(ErrorKind::Unsupported, name_ + " has no normal-form presentation");
    return *pc_;
}

const std::vector<int>& FiniteGroup::exponents(Element a) const {
    if (!pc_) fail(ErrorKind::Unsupported, name_ + " has no normal-form presentation");
    return exps_[a.index];
}

Element FiniteGroup::from_exponents(std::span<const int> exps) const {
    const auto& radix = pc().relative_orders;
    if (exps.size() != radix.size()) fail(ErrorKind::InvalidParameter, "exponent vector has wrong length");
    Exps e(exps.begin(), exps.end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = ((e[i] % radix[i]) + radix[i]) % radix[i];
    return Element{static_cast<std::uint16_t>(exps_to_index(e, radix))};
}

// ---- structure -----------------------------------------------------------------

Subgroup FiniteGroup::generated_subgroup(std::span<const Element> gens) const {
    ElementSet seen;
    std::vector<Element> out{identity()};
    seen.set(0);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (auto s : gens) {
            Element p = mul(out[i], s);
            if (!seen.test(p.index)) {
                seen.set(p.index);
                out.push_back(p);
            }
        }
    return Subgroup(seen, order_);
}

bool FiniteGroup::is_subgroup(std::span<const Element> elems) const {
    if (elems.empty()) return false;
    ElementSet m;
    for (auto e : elems) m.set(e.index);
    if (!m.test(0)) return false;
    for (auto a : elems)
        for (auto b : elems)
            if (!m.test(mul(a, inv(b)).index)) return false;
    return true;
}

bool FiniteGroup::is_normal(const Subgroup& h) const {
    for (auto g : generators_)
        for (auto e : h.elements())
            if (!h.contains(conjugate(g, e))) return false;
    return true;
}

Subgroup FiniteGroup::center() const {
    std::vector<Element> z;
    for (const auto& c : classes_)
        if (c.size() == 1) z.push_back(c[0]);
    return Subgroup(std::move(z));
}

Subgroup FiniteGroup::commutator_subgroup() const {
    std::vector<Element> comms;
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            comms.push_back(commutator(Element{static_cast<std::uint16_t>(a)}, Element{static_cast<std::uint16_t>(b)}));
    return generated_subgroup(comms);
}

Subgroup FiniteGroup::frattini() const {
    if (two_group_) {
        std::vector<Element> sq;
        for (auto e : elements()) sq.push_back(mul(e, e));
        return generated_subgroup(sq);
    }
    ElementSet m;
    m.set();
    for (const auto& h : maximal_subgroups()) m &= h.mask();
    if (order_ == 1) m.reset(), m.set(0);
    return Subgroup(m, order_);
}

bool FiniteGroup::generates(std::span<const Element> elems) const {
    if (two_group_) {
        std::vector<std::uint32_t> v;
        for (auto e : elems) v.push_back(frattini_coords_[e.index]);
        return f2_rank(std::move(v)) == frattini_rank_;
    }
    return generated_subgroup(elems).order() == order_;
}

std::vector<Element> FiniteGroup::minimal_generating_set() const {
    if (order_ == 1) return {};
    if (two_group_ && frattini_rank_ > 0) {
        std::vector<Element> out;
        std::vector<std::uint32_t> v;
        int rank = 0;
        for (auto e : elements()) {
            v.push_back(frattini_coords_[e.index]);
            int r = f2_rank(v);
            if (r > rank) {
                rank = r;
                out.push_back(e);
            } else {
                v.pop_back();
            }
            if (rank == frattini_rank_) break;
        }
        return out;
    }
    // greedy by closure (not necessarily minimal outside 2-groups)
    std::vector<Element> out;
    ElementSet cur;
    cur.set(0);
    for (auto e : elements()) {
        if (cur.test(e.index)) continue;
        out.push_back(e);
        cur = generated_subgroup(out).mask();
        if (static_cast<int>(cur.count()) == order_) break;
    }
    return out;
}

std::vector<Subgroup> FiniteGroup::all_subgroups() const {
    std::set<ElementSet, SetKeyLess> seen;
    std::vector<std::pair<ElementSet, std::vector<Element>>> subs;  // mask, generators
    auto add = [&](std::vector<Element> gens) {
        Subgroup s = generated_subgroup(gens);
        if (seen.insert(s.mask()).second) subs.emplace_back(s.mask(), std::move(gens));
    };
    add({});
    const auto el = elements();
    for (auto a : el) add({a});
    for (std::size_t i = 0; i < el.size(); ++i)
        for (std::size_t j = i + 1; j < el.size(); ++j) add({el[i], el[j]});
    // close under joins
    for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if ((subs[i].first & ~subs[j].first).none() || (subs[j].first & ~subs[i].first).none()) continue;
            std::vector<Element> gens = subs[i].second;
            gens.insert(gens.end(), subs[j].second.begin(), subs[j].second.end());
            add(std::move(gens));
        }
    std::vector<Subgroup> out;
    for (auto& [m, _] : subs) out.emplace_back(m, order_);
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.order() != b.order()) return a.order() < b.order();
        return set_key(a.mask()) < set_key(b.mask());
    });
    return out;
}

std::vector<Subgroup> FiniteGroup::maximal_subgroups() const {
    auto subs = all_subgroups();
    std::vector<Subgroup> out;
    for (const auto& h : subs) {
        if (h.order() == order_) continue;
        bool maximal = true;
        for (const auto& k : subs)
            if (k.order() > h.order() && k.order() < order_ && h.is_contained_in(k)) {
                maximal = false;
                break;
            }
        if (maximal) out.push_back(h);
    }
    return out;
}

bool FiniteGroup::are_conjugate(const Subgroup& a, const Subgroup& b) const {
    if (a.order() != b.order()) return false;
    for (auto g : elements()) {
        bool ok = true;
        for (auto e : a.elements())
            if (!b.contains(conjugate(g, e))) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

std::vector<Subgroup> FiniteGroup::subgroup_class_representatives() const {
    std::vector<Subgroup> reps;
    for (const auto& h : all_subgroups()) {
        bool found = false;
        for (const auto& r : reps)
            if (are_conjugate(r, h)) {
                found = true;
                break;
            }
        if (!found) reps.push_back(h);
    }
    return reps;
}

std::vector<Element> FiniteGroup::left_coset_representatives(const Subgroup& h) const {
    ElementSet covered;
    std::vector<Element> reps;
    for (auto g : elements()) {
        if (covered.test(g.index)) continue;
        reps.push_back(g);
        for (auto e : h.elements()) covered.set(mul(g, e).index);
    }
    return reps;
}

std::map<int, int> FiniteGroup::order_histogram() const {
    std::map<int, int> h;
    for (int o : orders_) ++h[o];
    return h;
}

bool FiniteGroup::is_latin_square() const {
    const int n = order_;
    for (int a = 0; a < n; ++a) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int b = 0; b < n; ++b) {
            auto r = table_[static_cast<std::size_t>(a) * n + b];
            auto c = table_[static_cast<std::size_t>(b) * n + a];
            if (row[r] || col[c]) return false;
            row[r] = col[c] = 1;
        }
    }
    return true;
}

bool FiniteGroup::is_associative() const {
    const std::size_t n = static_cast<std::size_t>(order_);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t ab = table_[a * n + b];
            for (std::size_t c = 0; c < n; ++c)
                if (table_[ab * n + c] != table_[a * n + table_[b * n + c]]) return false;
        }
    return true;
}

bool FiniteGroup::relators_hold() const {
    for (const auto& r : relators_)
        if (parse_element(r) != identity()) return false;
    return true;
}

// ---- named groups ------------------------------------------------------------

namespace {

Exps ev(std::initializer_list<int> v) { return Exps(v); }

}  // namespace

FiniteGroup build_quaternion(int n) {
    if (n < 3) fail(ErrorKind::InvalidParameter, "Q(2^n) needs n >= 3");
    if (n > 7) fail(ErrorKind::InvalidParameter, "Q(2^n) limited to order 128");
    const int m = 1 << (n - 1);
    PcPresentation pc;
    pc.letters = {"x", "y"};
    pc.relative_orders = {m, 2};
    pc.powers = {ev({0, 0}), ev({m / 2, 0})};
    pc.conjugates = {{}, {ev({m - 1, 0})}};
    std::vector<std::string> rel = {"x^" + std::to_string(m), "y^2*x^" + std::to_string(m / 2), "y*x*y^-1*x"};
    return FiniteGroup::from_pc("Q" + std::to_string(1 << n), std::move(pc), std::move(rel), 1 << n);
}

namespace {

FiniteGroup build_g(int n, bool second) {
    if (n < 3) fail(ErrorKind::InvalidParameter, "G1/G2 need n >= 3");
    if (n > 6) fail(ErrorKind::InvalidParameter, "G1/G2 limited to order 128");
    const int m = 1 << (n - 1);
    const int xz = second ? m / 2 - 1 : 1;  // z x z^-1
    PcPresentation pc;
    pc.letters = {"x", "y", "z"};
    pc.relative_orders = {m, 2, 2};
    pc.powers = {ev({0, 0, 0}), ev({m / 2, 0, 0}), ev({0, 0, 0})};
    pc.conjugates = {{}, {ev({m - 1, 0, 0})}, {ev({xz, 0, 0}), ev({m / 2, 1, 0})}};
    const std::string M = std::to_string(m), H = std::to_string(m / 2);
    std::vector<std::string> rel = {"x^" + M, "z^2", "y^2*x^" + H, "y*x*y^-1*x", "z*y*z*y"};
    rel.push_back(second ? "z*x*z*x^" + std::to_string(m / 2 + 1) : "z*x*z*x^-1");
    return FiniteGroup::from_pc(std::string(second ? "G2(" : "G1(") + std::to_string(n) + ")", std::move(pc), std::move(rel),
                                1 << (n + 1));
}

}  // namespace

FiniteGroup build_g1(int n) { return build_g(n, false); }
FiniteGroup build_g2(int n) { return build_g(n, true); }

FiniteGroup build_qd16() {
    PcPresentation pc;
    pc.letters = {"u", "v"};
    pc.relative_orders = {16, 2};
    pc.powers = {ev({0, 0}), ev({0, 0})};
    pc.conjugates = {{}, {ev({7, 0})}};
    return FiniteGroup::from_pc("QD16", std::move(pc), {"u^16", "v^2", "v*u*v*u^-7"}, 32);
}

FiniteGroup build_c4xc2_rtimes_c2() {
    PcPresentation pc;
    pc.letters = {"c", "b", "a"};
    pc.relative_orders = {4, 2, 2};
    pc.powers = {ev({0, 0, 0}), ev({0, 0, 0}), ev({0, 0, 0})};
    pc.conjugates = {{}, {ev({1, 0, 0})}, {ev({1, 0, 0}), ev({2, 1, 0})}};
    return FiniteGroup::from_pc("C4xC2_rtimes_C2", std::move(pc),
                                {"a^2", "b^2", "c^4", "b*c*b*c^3", "a*c*a*c^3", "a*b*a*c^2*b"}, 16);
}

FiniteGroup build_d4xc2_rtimes_c2() {
    PcPresentation pc;
    pc.letters = {"r", "a", "s", "b"};
    pc.relative_orders = {4, 2, 2, 2};
    pc.powers = {ev({0, 0, 0, 0}), ev({0, 0, 0, 0}), ev({0, 0, 0, 0}), ev({0, 0, 0, 0})};
    pc.conjugates = {{},
                     {ev({1, 0, 0, 0})},
                     {ev({3, 0, 0, 0}), ev({0, 1, 0, 0})},
                     {ev({1, 0, 0, 0}), ev({2, 1, 0, 0}), ev({3, 1, 1, 0})}};
    return FiniteGroup::from_pc("D4xC2_rtimes_C2", std::move(pc),
                                {"r^4", "s^2", "a^2", "b^2", "(s*r)^2", "a*r*a*r^-1", "(a*s)^2", "b*r*b*r^-1",
                                 "b*s*b*(s*r*a)^-1", "b*a*b*(a*r^2)^-1"},
                                32);
}

FiniteGroup build_dihedral(int m) {
    if (m < 2 || 2 * m > kMaxGroupOrder) fail(ErrorKind::InvalidParameter, "Dihedral(m) needs 2 <= m <= 64");
    PcPresentation pc;
    pc.letters = {"r", "s"};
    pc.relative_orders = {m, 2};
    pc.powers = {ev({0, 0}), ev({0, 0})};
    pc.conjugates = {{}, {ev({m - 1, 0})}};
    return FiniteGroup::from_pc("Dihedral(" + std::to_string(m) + ")", std::move(pc),
                                {"r^" + std::to_string(m), "s^2", "(s*r)^2"}, 2 * m);
}

FiniteGroup build_cyclic(int m) {
    if (m < 2 || m > kMaxGroupOrder) fail(ErrorKind::InvalidParameter, "cyclic order out of range");
    PcPresentation pc;
    pc.letters = {"x"};
    pc.relative_orders = {m};
    pc.powers = {ev({0})};
    pc.conjugates = {{}};
    return FiniteGroup::from_pc("C" + std::to_string(m), std::move(pc), {"x^" + std::to_string(m)}, m);
}

FiniteGroup build_named(std::string_view spec) {
    std::string s(spec);
    auto param = [&](std::size_t prefix) -> int {
        std::string rest = s.substr(prefix);
        if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
        if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail(ErrorKind::InvalidParameter, "bad group parameter in '" + s + "'");
        return std::stoi(rest);
    };
    if (s == "QD16") return build_qd16();
    if (s == "C4xC2_rtimes_C2") return build_c4xc2_rtimes_c2();
    if (s == "D4xC2_rtimes_C2") return build_d4xc2_rtimes_c2();
    if (s.rfind("G1", 0) == 0) return build_g1(param(2));
    if (s.rfind("G2", 0) == 0) return build_g2(param(2));
    if (s.rfind("Dihedral", 0) == 0) return build_dihedral(param(8));
    if (s.size() > 1 && s[0] == 'Q') {
        int order = param(1);
        if (!is_power_of_two(order) || order < 8) fail(ErrorKind::InvalidParameter, "quaternion order must be 2^n, n >= 3");
        return build_quaternion(std::countr_zero(static_cast<unsigned>(order)));
    }
    if (s.size() > 1 && s[0] == 'C') return build_cyclic(param(1));
    fail(ErrorKind::InvalidParameter, "unknown group '" + s + "'");
}

// ---- named subgroups of Q(2^n) -----------------------------------------------

NamedSubgroups::NamedSubgroups(const FiniteGroup& q, int n) : n_(n) {
    if (!q.has_pc() || q.generator_letters() != std::vector<std::string>{"x", "y"} || q.order() != (1 << n))
        fail(ErrorKind::InvalidParameter, "named subgroups need the group from build_quaternion(n)");
    const Element x = q.generator("x"), y = q.generator("y"), xy = q.mul(x, y);
    auto xp = [&](int i) { return q.pow(x, 1L << (n - i)); };
    for (int i = 2; i <= n; ++i) {
        std::vector<Element> g{xp(i)};
        canonical_["K" + std::to_string(i)] = q.generated_subgroup(g);
    }
    for (int j = 2; j <= n - 1; ++j) {
        std::vector<Element> h{xp(j), y}, ht{xp(j), xy};
        canonical_["H" + std::to_string(j)] = q.generated_subgroup(h);
        canonical_["Ht" + std::to_string(j)] = q.generated_subgroup(ht);
    }
    for (auto& [label, s] : canonical_) {
        s.set_label(label);
        all_[label] = s;
    }
    auto alias = [&](const std::string& a, const std::string& target) {
        Subgroup s = canonical_.at(target);
        s.set_label(a);
        all_[a] = s;
    };
    alias("Z", "K2");
    alias("N1", "K" + std::to_string(n));
    alias("N2", "H" + std::to_string(n - 1));
    alias("N3", "Ht" + std::to_string(n - 1));
    all_["G"] = Subgroup(q.elements(), "G");
    all_["1"] = Subgroup(std::vector<Element>{q.identity()}, "1");
}

const Subgroup& NamedSubgroups::get(std::string_view label) const {
    auto it = all_.find(label);
    if (it == all_.end()) fail(ErrorKind::InvalidParameter, "unknown subgroup label '" + std::string(label) + "'");
    return it->second;
}

bool NamedSubgroups::has(std::string_view label) const { return all_.find(label) != all_.end(); }

// ---- homomorphism search -------------------------------------------------------

namespace {

// Spanning tree of the Cayley graph of G for right multiplication by gens.
struct SpanningTree {
    std::vector<Element> order;   // BFS order, starting at the identity
    std::vector<int> parent;      // index into elements
    std::vector<int> via;         // generator slot used to reach each element
};

SpanningTree spanning_tree(const FiniteGroup& g, const std::vector<Element>& gens) {
    SpanningTree t;
    t.parent.assign(g.order(), -1);
    t.via.assign(g.order(), -1);
    std::vector<char> seen(g.order(), 0);
    t.order.push_back(g.identity());
    seen[0] = 1;
    for (std::size_t i = 0; i < t.order.size(); ++i)
        for (std::size_t s = 0; s < gens.size(); ++s) {
            Element p = g.mul(t.order[i], gens[s]);
            if (!seen[p.index]) {
                seen[p.index] = 1;
                t.parent[p.index] = t.order[i].index;
                t.via[p.index] = static_cast<int>(s);
                t.order.push_back(p);
            }
        }
    return t;
}

// Extends gens[s] -> images[s] to a homomorphism G -> H if it exists.
std::optional<std::vector<Element>> extend_hom(const FiniteGroup& g, const std::vector<Element>& gens, const SpanningTree& t,
                                               const FiniteGroup& h, const std::vector<Element>& images) {
    std::vector<Element> phi(g.order());
    phi[0] = h.identity();
    for (std::size_t i = 1; i < t.order.size(); ++i) {
        auto e = t.order[i].index;
        phi[e] = h.mul(phi[t.parent[e]], images[t.via[e]]);
    }
    for (auto a : t.order)
        for (std::size_t s = 0; s < gens.size(); ++s)
            if (phi[g.mul(a, gens[s]).index] != h.mul(phi[a.index], images[s])) return std::nullopt;
    return phi;
}

bool bijective(const std::vector<Element>& phi, int order) {
    std::vector<char> hit(order, 0);
    for (auto e : phi) {
        if (hit[e.index]) return false;
        hit[e.index] = 1;
    }
    return true;
}

// Enumerates candidate image tuples in H (same element orders, generating H) and calls f on each
// bijective homomorphism; stops when f returns false.
void search_isomorphisms(const FiniteGroup& g, const FiniteGroup& h,
                         const std::function<bool(const std::vector<Element>&)>& f) {
    if (g.order() != h.order()) return;
    const auto gens = g.minimal_generating_set();
    const auto tree = spanning_tree(g, gens);
    std::vector<std::vector<Element>> cand(gens.size());
    for (std::size_t s = 0; s < gens.size(); ++s)
        for (auto e : h.elements())
            if (h.element_order(e) == g.element_order(gens[s])) cand[s].push_back(e);
    std::vector<Element> images(gens.size());
    std::function<bool(std::size_t)> rec = [&](std::size_t s) -> bool {
        if (s == gens.size()) {
            if (!h.generates(images)) return true;
            auto phi = extend_hom(g, gens, tree, h, images);
            if (phi && bijective(*phi, h.order())) return f(*phi);
            return true;
        }
        for (auto e : cand[s]) {
            images[s] = e;
            if (!rec(s + 1)) return false;
        }
        return true;
    };
    if (gens.empty()) {
        f(std::vector<Element>{h.identity()});
        return;
    }
    rec(0);
}

}  // namespace

std::vector<Automorphism> automorphisms(const FiniteGroup& g) {
    if (g.order() > kMaxGenericOrder) fail(ErrorKind::InvalidParameter, "automorphism search limited to order 64");
    std::vector<Automorphism> out;
    search_isomorphisms(g, g, [&](const std::vector<Element>& phi) {
        out.push_back(Automorphism{phi});
        return true;
    });
    return out;
}

std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.order() != h.order()) return std::nullopt;
    if (g.center().order() != h.center().order()) return std::nullopt;
    if (g.conjugacy_classes().size() != h.conjugacy_classes().size()) return std::nullopt;
    if (g.order_histogram() != h.order_histogram()) return std::nullopt;
    if (g.commutator_subgroup().order() != h.commutator_subgroup().order()) return std::nullopt;
    std::optional<std::vector<Element>> found;
    search_isomorphisms(g, h, [&](const std::vector<Element>& phi) {
        found = phi;
        return false;
    });
    return found;
}

bool isomorphic(const FiniteGroup& g, const FiniteGroup& h) {
    if (g.order() > kMaxGenericOrder || h.order() > kMaxGenericOrder)
        fail(ErrorKind::InvalidParameter, "isomorphism test limited to order 64");
    return find_isomorphism(g, h).has_value();
}

}  // namespace qact
