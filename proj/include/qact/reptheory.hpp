#pragma once

// Character theory of Q(2^n) in closed form.

#include <memory>
#include <string>
#include <vector>

#include "qact/cyclo.hpp"
#include "qact/dense_matrix.hpp"
#include "qact/groups.hpp"

namespace qact {

/// Q(2^n) together with its named subgroups and class-representative convention:
/// x^a (0 <= a <= 2^{n-2}), y, x*y.
class QuaternionGroup {
public:
    explicit QuaternionGroup(int n);

    int n() const { return n_; }
    int m() const { return m_; }  // order of x, 2^{n-1}
    const FiniteGroup& group() const { return *group_; }
    GroupPtr group_ptr() const { return group_; }
    const NamedSubgroups& subgroups() const { return subgroups_; }

    Element x() const { return x_; }
    Element y() const { return y_; }
    /// x^a y^e
    Element element(long a, int e) const;
    /// (a mod 2^{n-1}, e) of an element.
    std::pair<int, int> normal_form(Element g) const;

    int class_count() const { return static_cast<int>(group_->conjugacy_classes().size()); }
    Element class_representative(int cls) const { return class_reps_[cls]; }
    std::string class_label(int cls) const;

private:
    int n_, m_;
    GroupPtr group_;
    NamedSubgroups subgroups_;
    Element x_, y_;
    std::vector<Element> class_reps_;
};

using QuaternionPtr = std::shared_ptr<const QuaternionGroup>;

/// A class function, stored by value on each conjugacy class of the owning group.
struct Character {
    std::string label;
    std::vector<Cyclotomic> values;

    Cyclotomic degree(const FiniteGroup& g) const { return values[g.class_of(g.identity())]; }
    Cyclotomic operator()(const FiniteGroup& g, Element e) const { return values[g.class_of(e)]; }

    friend Character operator+(const Character& a, const Character& b);
    friend Character operator-(const Character& a, const Character& b);
    friend Character operator*(long k, const Character& a);
    friend bool operator==(const Character& a, const Character& b) { return a.values == b.values; }
};

Character zero_character(const FiniteGroup& g);

/// chi1..chi4 then Theta_1..Theta_{2^{n-2}-1}.
std::vector<Character> irreducible_characters(const QuaternionGroup& q);
/// Theta_s for any integer s (the trace of diag(w^s, w^-s) on x^a, zero off <x>).
Character theta_character(const QuaternionGroup& q, long s);
/// Looks up "chi1".."chi4", "Theta<s>".
Character character_by_label(const QuaternionGroup& q, const std::string& label);

/// rho_K(g) = number of left cosets of K fixed by g. Works for any finite group.
Character permutation_character(const FiniteGroup& g, const Subgroup& k);
/// (1/|G|) sum chi(g) psi(g^-1)
Rational inner_product(const FiniteGroup& g, const Character& chi, const Character& psi);
/// (1/|G|) sum chi(g^2)
Rational frobenius_schur_indicator(const FiniteGroup& g, const Character& chi);

struct RationalIrreducible {
    std::string label;              // chi1..chi4, W1..W_{n-2}
    std::vector<int> constituents;  // Theta indices; empty for the linear characters
    int schur_index = 1;
    long galois_generator = 1;      // smallest odd t whose powers permute the orbit transitively
    Character character;            // schur_index * sum of constituents
};

std::vector<RationalIrreducible> rational_irreducibles(const QuaternionGroup& q);

/// Theta_s -> Theta_{ts}, reduced into 1..2^{n-2}-1 via Theta_s = Theta_{-s}.
int galois_theta_index(const QuaternionGroup& q, long s, long t);

/// Explicit matrices: 1x1 for chi_i, the 2x2 blocks for Theta_s.
Matrix<Cyclotomic> representation_matrix(const QuaternionGroup& q, const std::string& label, Element g);

/// dim V^K by Frobenius reciprocity.
int fixed_subspace_dim(const QuaternionGroup& q, const std::string& label, const Subgroup& k);
/// dim V^K as the rank of the averaging projector (1/|K|) sum rho(k).
int fixed_subspace_dim_by_matrices(const QuaternionGroup& q, const std::string& label, const Subgroup& k);

}  // namespace qact
