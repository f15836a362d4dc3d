#include "qact/reptheory.hpp"

#include <algorithm>
#include <set>

#include "qact/error.hpp"

namespace qact {

QuaternionGroup::QuaternionGroup(int n)
    : n_(n),
      m_(1 << (n - 1)),
      group_(std::make_shared<const FiniteGroup>(build_quaternion(n))),
      subgroups_(*group_, n),
      x_(group_->generator("x")),
      y_(group_->generator("y")) {
    const auto& g = *group_;
    for (const auto& cls : g.conjugacy_classes()) {
        Element rep = cls.front();
        bool found = false;
        for (auto e : cls) {
            auto [a, f] = normal_form(e);
            if (f == 0 && a <= m_ / 2) {
                rep = e;
                found = true;
                break;
            }
        }
        if (!found) {
            const Element xy = g.mul(x_, y_);
            rep = std::find(cls.begin(), cls.end(), y_) != cls.end() ? y_ : xy;
            if (std::find(cls.begin(), cls.end(), rep) == cls.end()) fail(ErrorKind::Internal, "unexpected conjugacy class");
        }
        class_reps_.push_back(rep);
    }
}

Element QuaternionGroup::element(long a, int e) const {
    const int v[2] = {static_cast<int>(((a % m_) + m_) % m_), e & 1};
    return group_->from_exponents(v);
}

std::pair<int, int> QuaternionGroup::normal_form(Element g) const {
    const auto& e = group_->exponents(g);
    return {e[0], e[1]};
}

std::string QuaternionGroup::class_label(int cls) const { return group_->element_name(class_reps_[cls]); }

// ---- characters ------------------------------------------------------------

Character operator+(const Character& a, const Character& b) {
    Character c{"virtual", a.values};
    for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] += b.values[i];
    return c;
}

Character operator-(const Character& a, const Character& b) {
    Character c{"virtual", a.values};
    for (std::size_t i = 0; i < c.values.size(); ++i) c.values[i] -= b.values[i];
    return c;
}

Character operator*(long k, const Character& a) {
    Character c{"virtual", a.values};
    for (auto& v : c.values) v *= Cyclotomic(k);
    return c;
}

Character zero_character(const FiniteGroup& g) {
    return Character{"virtual", std::vector<Cyclotomic>(g.conjugacy_classes().size(), Cyclotomic(0))};
}

namespace {

Character linear_character(const QuaternionGroup& q, int which) {
    // images of x and y for chi1..chi4
    static const int xs[4] = {1, 1, -1, -1};
    static const int ys[4] = {1, -1, 1, -1};
    Character c{"chi" + std::to_string(which + 1), {}};
    for (int cls = 0; cls < q.class_count(); ++cls) {
        auto [a, e] = q.normal_form(q.class_representative(cls));
        long v = (a % 2 == 1 ? xs[which] : 1) * (e == 1 ? ys[which] : 1);
        c.values.emplace_back(v);
    }
    return c;
}

}  // namespace

Character theta_character(const QuaternionGroup& q, long s) {
    Character c{"Theta" + std::to_string(s), {}};
    for (int cls = 0; cls < q.class_count(); ++cls) {
        auto [a, e] = q.normal_form(q.class_representative(cls));
        if (e == 1)
            c.values.emplace_back(0);
        else
            c.values.push_back(Cyclotomic::zeta(q.m(), s * a) + Cyclotomic::zeta(q.m(), -s * a));
    }
    return c;
}

std::vector<Character> irreducible_characters(const QuaternionGroup& q) {
    std::vector<Character> out;
    for (int i = 0; i < 4; ++i) out.push_back(linear_character(q, i));
    for (int s = 1; s <= q.m() / 2 - 1; ++s) out.push_back(theta_character(q, s));
    return out;
}

namespace {

int parse_label_index(const std::string& label, const std::string& prefix) {
    if (label.rfind(prefix, 0) != 0 || label.size() == prefix.size()) return -1;
    std::string rest = label.substr(prefix.size());
    if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) return -1;
    return std::stoi(rest);
}

}  // namespace

Character character_by_label(const QuaternionGroup& q, const std::string& label) {
    int i = parse_label_index(label, "chi");
    if (i >= 1 && i <= 4) return linear_character(q, i - 1);
    int s = parse_label_index(label, "Theta");
    if (s >= 1 && s <= q.m() / 2 - 1) return theta_character(q, s);
    fail(ErrorKind::InvalidParameter, "unknown irreducible '" + label + "'");
}

Character permutation_character(const FiniteGroup& g, const Subgroup& k) {
    if (!g.is_subgroup(k.elements())) fail(ErrorKind::InvalidParameter, "not a subgroup");
    const auto reps = g.left_coset_representatives(k);
    Character c{"rho_" + (k.label().empty() ? std::string("K") : k.label()), {}};
    for (const auto& cls : g.conjugacy_classes()) {
        const Element e = cls.front();
        long fixed = 0;
        for (auto h : reps)
            if (k.contains(g.mul(g.mul(g.inv(h), e), h))) ++fixed;
        c.values.emplace_back(fixed);
    }
    return c;
}

Rational inner_product(const FiniteGroup& g, const Character& chi, const Character& psi) {
    Cyclotomic s(0);
    const auto& classes = g.conjugacy_classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const int inv_cls = g.class_of(g.inv(classes[c].front()));
        s += Cyclotomic(static_cast<long>(classes[c].size())) * chi.values[c] * psi.values[inv_cls];
    }
    s /= Cyclotomic(static_cast<long>(g.order()));
    if (!s.is_rational()) fail(ErrorKind::Internal, "inner product is not rational");
    return s.to_rational();
}

Rational frobenius_schur_indicator(const FiniteGroup& g, const Character& chi) {
    Cyclotomic s(0);
    for (auto e : g.elements()) s += chi.values[g.class_of(g.mul(e, e))];
    s /= Cyclotomic(static_cast<long>(g.order()));
    return s.to_rational();
}

int galois_theta_index(const QuaternionGroup& q, long s, long t) {
    const long m = q.m();
    long r = (((s * t) % m) + m) % m;
    if (r > m / 2) r = m - r;
    return static_cast<int>(r);
}

std::vector<RationalIrreducible> rational_irreducibles(const QuaternionGroup& q) {
    const auto& g = q.group();
    std::vector<RationalIrreducible> out;
    for (int i = 1; i <= 4; ++i) {
        RationalIrreducible r;
        r.label = "chi" + std::to_string(i);
        r.character = character_by_label(q, r.label);
        out.push_back(std::move(r));
    }
    const long m = q.m();
    for (int l = 1; l <= q.n() - 2; ++l) {
        const long s0 = 1L << (l - 1);
        std::set<int> orbit;
        for (long t = 1; t < m; t += 2) orbit.insert(galois_theta_index(q, s0, t));
        RationalIrreducible r;
        r.label = "W" + std::to_string(l);
        r.constituents.assign(orbit.begin(), orbit.end());
        for (long t = 1; t < m; t += 2) {
            std::set<int> cyc;
            long s = s0;
            for (std::size_t k = 0; k < orbit.size(); ++k) {
                cyc.insert(galois_theta_index(q, s, 1));
                s = (s * t) % m;
            }
            if (cyc == orbit) {
                r.galois_generator = t;
                break;
            }
        }
        Rational fs = frobenius_schur_indicator(g, theta_character(q, s0));
        r.schur_index = fs == -1 ? 2 : 1;
        Character sum = zero_character(g);
        for (int s : r.constituents) sum = sum + theta_character(q, s);
        r.character = static_cast<long>(r.schur_index) * sum;
        r.character.label = r.label;
        out.push_back(std::move(r));
    }
    return out;
}

Matrix<Cyclotomic> representation_matrix(const QuaternionGroup& q, const std::string& label, Element g) {
    auto [a, e] = q.normal_form(g);
    int i = parse_label_index(label, "chi");
    if (i >= 1 && i <= 4) {
        Matrix<Cyclotomic> m(1, 1);
        m(0, 0) = linear_character(q, i - 1)(q.group(), g);
        return m;
    }
    int s = parse_label_index(label, "Theta");
    if (s < 1 || s > q.m() / 2 - 1) fail(ErrorKind::InvalidParameter, "unknown irreducible '" + label + "'");
    Matrix<Cyclotomic> x(2, 2), y(2, 2);
    x(0, 0) = Cyclotomic::zeta(q.m(), static_cast<long>(s) * a);
    x(1, 1) = Cyclotomic::zeta(q.m(), -static_cast<long>(s) * a);
    if (e == 0) return x;
    y(0, 1) = Cyclotomic(s % 2 == 0 ? 1 : -1);
    y(1, 0) = Cyclotomic(1);
    return x * y;
}

int fixed_subspace_dim(const QuaternionGroup& q, const std::string& label, const Subgroup& k) {
    Rational r = inner_product(q.group(), character_by_label(q, label), permutation_character(q.group(), k));
    if (r.get_den() != 1 || r < 0) fail(ErrorKind::Internal, "fixed-space dimension is not a natural number");
    return static_cast<int>(r.get_num().get_si());
}

int fixed_subspace_dim_by_matrices(const QuaternionGroup& q, const std::string& label, const Subgroup& k) {
    Matrix<Cyclotomic> p;
    for (auto e : k.elements()) {
        auto m = representation_matrix(q, label, e);
        if (p.rows() == 0)
            p = m;
        else
            p += m;
    }
    p = Cyclotomic(Rational(1, k.order())) * p;
    return static_cast<int>(rank(p));
}

}  // namespace qact
