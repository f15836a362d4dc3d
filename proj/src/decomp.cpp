#include "qact/decomp.hpp"

#include "qact/error.hpp"

namespace qact {

namespace {

int theta_count(int n) { return (1 << (n - 2)) - 1; }

}  // namespace

MultiplicityVector MultiplicityVector::from_orbits(const QuaternionGroup& q, std::array<long, 4> a,
                                                   const std::vector<long>& orbit_values) {
    if (static_cast<int>(orbit_values.size()) != q.n() - 2)
        fail(ErrorKind::InvalidMultiplicities, "need one b value per Galois orbit (" + std::to_string(q.n() - 2) + ")");
    MultiplicityVector mv;
    mv.n = q.n();
    mv.a = a;
    for (const auto& r : rational_irreducibles(q)) {
        if (r.label[0] != 'W') continue;
        int l = std::stoi(r.label.substr(1));
        for (int s : r.constituents) mv.b[s] = orbit_values[l - 1];
    }
    return mv;
}

MultiplicityVector MultiplicityVector::from_lists(const QuaternionGroup& q, const std::vector<long>& a,
                                                  const std::vector<long>& b) {
    if (a.size() != 4) fail(ErrorKind::InvalidMultiplicities, "need four a values");
    std::array<long, 4> aa{a[0], a[1], a[2], a[3]};
    const int ts = theta_count(q.n());
    if (static_cast<int>(b.size()) == ts) {
        MultiplicityVector mv;
        mv.n = q.n();
        mv.a = aa;
        for (int s = 1; s <= ts; ++s) mv.b[s] = b[s - 1];
        return mv;
    }
    if (static_cast<int>(b.size()) == q.n() - 2) return from_orbits(q, aa, b);
    fail(ErrorKind::InvalidMultiplicities,
         "b must have " + std::to_string(ts) + " entries (one per s) or " + std::to_string(q.n() - 2) + " (one per orbit)");
}

long MultiplicityVector::total_dimension() const {
    long t = a[0] + a[1] + a[2] + a[3];
    for (const auto& [_, v] : b) t += 2 * v;
    return t;
}

void MultiplicityVector::validate(const QuaternionGroup& q) const {
    if (n != q.n()) fail(ErrorKind::InvalidMultiplicities, "multiplicity vector is for a different n");
    for (long v : a)
        if (v < 0) fail(ErrorKind::InvalidMultiplicities, "negative a_i");
    const int ts = theta_count(n);
    if (static_cast<int>(b.size()) != ts) fail(ErrorKind::InvalidMultiplicities, "b must be indexed by s = 1.." + std::to_string(ts));
    for (const auto& [s, v] : b) {
        if (s < 1 || s > ts) fail(ErrorKind::InvalidMultiplicities, "b index out of range");
        if (v < 0) fail(ErrorKind::InvalidMultiplicities, "negative b_s");
    }
    for (const auto& r : rational_irreducibles(q))
        for (int s : r.constituents)
            if (b.at(s) != b.at(r.constituents.front()))
                fail(ErrorKind::InvalidMultiplicities, "b is not constant on the Galois orbit " + r.label);
}

Character analytic_character(const QuaternionGroup& q, const MultiplicityVector& mv) {
    Character c = zero_character(q.group());
    for (int i = 0; i < 4; ++i)
        if (mv.a[i] != 0) c = c + mv.a[i] * character_by_label(q, "chi" + std::to_string(i + 1));
    for (const auto& [s, v] : mv.b)
        if (v != 0) c = c + v * theta_character(q, s);
    c.label = "rho_a";
    return c;
}

// ---- factor table ----------------------------------------------------------

namespace {

long find_dim(const std::vector<Factor>& f, const std::string& name) {
    for (const auto& x : f)
        if (x.name == name) return x.dimension;
    fail(ErrorKind::NotFound, "no factor " + name);
}

}  // namespace

long FactorTable::dim_AG() const { return find_dim(factors, "A_G"); }
long FactorTable::dim_prym_N(int i) const { return find_dim(factors, "P(A_N" + std::to_string(i) + "/A_G)"); }
long FactorTable::dim_prym_A_over_AZ() const { return find_dim(factors, "P(A/A_Z)"); }

std::map<int, long> FactorTable::dim_prym_H() const {
    std::map<int, long> out;
    for (int j = 2; j <= n - 2; ++j)
        out[j] = find_dim(factors, "P(A_H" + std::to_string(j) + "/A_H" + std::to_string(j + 1) + ")");
    return out;
}

long FactorTable::weighted_total() const {
    long t = 0;
    for (const auto& f : factors) t += f.dimension * f.multiplicity;
    return t;
}

FactorTable factor_dimensions(const QuaternionGroup& q, const MultiplicityVector& mv) {
    mv.validate(q);
    const int n = q.n();
    FactorTable t;
    t.n = n;
    std::vector<Factor> common;
    common.push_back({"A_G", "chi1", mv.a[0], 1});
    for (int i = 1; i <= 3; ++i)
        common.push_back({"P(A_N" + std::to_string(i) + "/A_G)", "chi" + std::to_string(i + 1), mv.a[i], 1});
    common.push_back({"P(A/A_Z)", "W1", (1L << (n - 2)) * mv.b.at(1), 1});
    t.factors = common;
    t.factors_tilde = common;
    for (int j = 2; j <= n - 2; ++j) {
        const long d = (1L << (n - j - 2)) * mv.b.at(1 << (j - 1));
        const std::string a = std::to_string(j), b = std::to_string(j + 1);
        t.factors.push_back({"P(A_H" + a + "/A_H" + b + ")", "W" + a, d, 2});
        t.factors_tilde.push_back({"P(A_Ht" + a + "/A_Ht" + b + ")", "W" + a, d, 2});
    }
    return t;
}

long dim_fixed_subvariety(const QuaternionGroup& q, const MultiplicityVector& mv, const Subgroup& k) {
    Rational r = inner_product(q.group(), analytic_character(q, mv), permutation_character(q.group(), k));
    if (r.get_den() != 1) fail(ErrorKind::Internal, "non-integral dimension");
    return r.get_num().get_si();
}

// ---- triviality --------------------------------------------------------------

Matrix<Cyclotomic> analytic_matrix(const QuaternionGroup& q, const MultiplicityVector& mv, Element g) {
    std::vector<Matrix<Cyclotomic>> blocks;
    for (int i = 0; i < 4; ++i)
        for (long c = 0; c < mv.a[i]; ++c) blocks.push_back(representation_matrix(q, "chi" + std::to_string(i + 1), g));
    for (const auto& [s, v] : mv.b)
        for (long c = 0; c < v; ++c) blocks.push_back(representation_matrix(q, "Theta" + std::to_string(s), g));
    std::size_t dim = 0;
    for (const auto& b : blocks) dim += b.rows();
    Matrix<Cyclotomic> m(dim, dim);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) m(off + i, off + j) = b(i, j);
        off += b.rows();
    }
    return m;
}

TrivialityReport is_trivial_decomposition(const QuaternionGroup& q, const MultiplicityVector& mv) {
    mv.validate(q);
    const auto& g = q.group();
    TrivialityReport r;

    auto table = factor_dimensions(q, mv);
    r.only_prym_a_over_az = true;
    for (const auto* list : {&table.factors, &table.factors_tilde})
        for (const auto& f : *list)
            if (f.name != "P(A/A_Z)" && f.dimension != 0) r.only_prym_a_over_az = false;

    r.dim_az_zero = dim_fixed_subvariety(q, mv, q.subgroups().get("Z")) == 0;

    r.all_nontrivial_fixed_zero = true;
    for (const auto& k : g.all_subgroups()) {
        if (k.order() == 1) continue;
        if (dim_fixed_subvariety(q, mv, k) != 0) {
            r.all_nontrivial_fixed_zero = false;
            break;
        }
    }

    r.a_and_even_b_zero = mv.a == std::array<long, 4>{0, 0, 0, 0};
    for (const auto& [s, v] : mv.b)
        if (s % 2 == 0 && v != 0) r.a_and_even_b_zero = false;

    // det(rho_a(g) - I) over the blocks that occur
    std::vector<std::string> labels;
    for (int i = 0; i < 4; ++i)
        if (mv.a[i] > 0) labels.push_back("chi" + std::to_string(i + 1));
    for (const auto& [s, v] : mv.b)
        if (v > 0) labels.push_back("Theta" + std::to_string(s));
    r.fixed_point_free = true;
    for (auto e : g.elements()) {
        if (e == g.identity()) continue;
        for (const auto& l : labels) {
            auto m = representation_matrix(q, l, e);
            m -= Matrix<Cyclotomic>::identity(m.rows());
            if (determinant(m).is_zero()) {
                r.fixed_point_free = false;
                break;
            }
        }
        if (!r.fixed_point_free) break;
    }
    return r;
}

// ---- inverse problem -----------------------------------------------------------

MultiplicitySolution multiplicities_from_dimensions(const QuaternionGroup& q, const std::map<std::string, long>& dims) {
    const auto& g = q.group();
    const int n = q.n();
    auto ri = rational_irreducibles(q);
    // columns: chi1..chi4, then sum of Theta over each orbit W_l
    std::vector<Character> cols;
    for (int i = 1; i <= 4; ++i) cols.push_back(character_by_label(q, "chi" + std::to_string(i)));
    for (int l = 1; l <= n - 2; ++l) {
        Character c = zero_character(g);
        for (const auto& r : ri)
            if (r.label == "W" + std::to_string(l))
                for (int s : r.constituents) c = c + theta_character(q, s);
        cols.push_back(c);
    }
    Matrix<Rational> a(dims.size(), cols.size());
    std::vector<Rational> rhs;
    std::size_t row = 0;
    for (const auto& [label, d] : dims) {
        auto rho = permutation_character(g, q.subgroups().get(label));
        for (std::size_t c = 0; c < cols.size(); ++c) a(row, c) = inner_product(g, cols[c], rho);
        rhs.emplace_back(d);
        ++row;
    }
    auto sol = solve(a, rhs);
    if (!sol) fail(ErrorKind::Internal, "quotient dimensions are inconsistent with any analytic representation");
    MultiplicitySolution out;
    out.unique = sol->kernel.empty();
    out.kernel = sol->kernel;
    std::array<long, 4> av{};
    std::vector<long> bv;
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const Rational& v = sol->particular[c];
        if (out.unique && (v.get_den() != 1 || v < 0)) fail(ErrorKind::Internal, "solution is not a natural-number vector");
        long iv = v.get_den() == 1 ? v.get_num().get_si() : 0;
        if (c < 4)
            av[c] = iv;
        else
            bv.push_back(iv);
    }
    out.mv = MultiplicityVector::from_orbits(q, av, bv);
    return out;
}

}  // namespace qact
