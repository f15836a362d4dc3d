#pragma once

// Dimension calculus for abelian varieties with a Q(2^n)-action, driven by the
// multiplicities of the analytic representation.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "qact/reptheory.hpp"

namespace qact {

struct Ske;

struct MultiplicityVector {
    int n = 0;
    std::array<long, 4> a{};
    std::map<int, long> b;  // s -> b_s, s = 1..2^{n-2}-1

    /// b_s from one value per Galois orbit: orbit_values[l-1] is the value on W_l.
    static MultiplicityVector from_orbits(const QuaternionGroup& q, std::array<long, 4> a, const std::vector<long>& orbit_values);
    /// Parses b given as one value per s ("1,1,1") or one per orbit when the lengths say so.
    static MultiplicityVector from_lists(const QuaternionGroup& q, const std::vector<long>& a, const std::vector<long>& b);

    long total_dimension() const;
    /// Throws Error(InvalidMultiplicities) on negative entries, missing indices or Galois violations.
    void validate(const QuaternionGroup& q) const;
    /// Value on W_l (b_{2^{l-1}}).
    long orbit_value(int l) const { return b.at(1 << (l - 1)); }
};

Character analytic_character(const QuaternionGroup& q, const MultiplicityVector& mv);

struct Factor {
    std::string name;        // geometric name, e.g. "P(A_H2/A_H3)"
    std::string rep;         // rational irreducible behind the factor
    long dimension = 0;
    int multiplicity = 1;    // power in the isogeny decomposition
};

struct FactorTable {
    int n = 0;
    std::vector<Factor> factors;            // decomposition through the H_j chain
    std::vector<Factor> factors_tilde;      // same, through the Ht_j chain

    long dim_AG() const;
    long dim_prym_N(int i) const;           // i = 1..3
    long dim_prym_A_over_AZ() const;
    std::map<int, long> dim_prym_H() const; // j -> dim, j = 2..n-2
    /// sum of dimension * multiplicity
    long weighted_total() const;
};

/// Closed-form table (no inner products).
FactorTable factor_dimensions(const QuaternionGroup& q, const MultiplicityVector& mv);

/// dim A_K = <rho_a, rho_K>
long dim_fixed_subvariety(const QuaternionGroup& q, const MultiplicityVector& mv, const Subgroup& k);

struct TrivialityReport {
    bool only_prym_a_over_az = false;  // every factor other than P(A/A_Z) vanishes
    bool dim_az_zero = false;
    bool all_nontrivial_fixed_zero = false;
    bool a_and_even_b_zero = false;
    bool fixed_point_free = false;

    std::array<bool, 5> flags() const {
        return {only_prym_a_over_az, dim_az_zero, all_nontrivial_fixed_zero, a_and_even_b_zero, fixed_point_free};
    }
    bool agree() const {
        auto f = flags();
        for (bool v : f)
            if (v != f[0]) return false;
        return true;
    }
};

TrivialityReport is_trivial_decomposition(const QuaternionGroup& q, const MultiplicityVector& mv);

/// Block-diagonal rho_a(g) built from the explicit 1x1 and 2x2 blocks.
Matrix<Cyclotomic> analytic_matrix(const QuaternionGroup& q, const MultiplicityVector& mv, Element g);

struct MultiplicitySolution {
    MultiplicityVector mv;
    bool unique = true;
    std::vector<std::vector<Rational>> kernel;  // unknowns: a1..a4, then one b per orbit
};

/// Solves dim A_K = dims[label] for (a, b). Labels are named-subgroup labels plus "1" and "G".
MultiplicitySolution multiplicities_from_dimensions(const QuaternionGroup& q, const std::map<std::string, long>& dims);

/// Same, for A = JS with dim JS_K = genus(S_K) read off the ske. The ske must act through q's group.
MultiplicitySolution multiplicities_from_quotient_genera(const QuaternionGroup& q, const Ske& s);

}  // namespace qact
