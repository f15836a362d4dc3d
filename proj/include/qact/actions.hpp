#pragma once

// Group actions on compact Riemann surfaces through surface-kernel epimorphisms (skes):
// signatures, Riemann-Hurwitz, enumeration and topological classification, quotient
// branch data, genus-zero actions, one-dimensional families and extensions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qact/cyclo.hpp"
#include "qact/groups.hpp"
#include "qact/reptheory.hpp"

namespace qact {

struct Signature {
    int gamma = 0;
    std::vector<int> periods;

    /// 2 gamma - 2 + sum (1 - 1/k)
    Rational mu() const;
    /// "(0; 4,4,4,4)"
    std::string to_string() const;
    /// Accepts "0:4,4,4,4", "(0; 4,4,4,4)", "1:" and "(1; )".
    static Signature parse(std::string_view text);
    /// Periods sorted in decreasing order.
    Signature sorted() const;
    friend bool operator==(const Signature&, const Signature&) = default;
};

/// g with 2g - 2 = |G| mu, when that is an integer >= 2.
std::optional<long> genus_from_signature(long group_order, const Signature& sig);

struct Ske {
    GroupPtr group;
    Signature signature;
    std::vector<Element> hyperbolic;  // alpha_1, beta_1, ..., alpha_gamma, beta_gamma
    std::vector<Element> elliptic;    // one per period

    /// hyperbolic then elliptic
    std::vector<Element> images() const;
    std::string to_string() const;
    long genus() const;  // from Riemann-Hurwitz; throws when the signature is inadmissible
};

/// Builds a ske from element words; the signature periods are taken from `sig`.
Ske make_ske(GroupPtr group, Signature sig, const std::vector<std::string>& elliptic,
             const std::vector<std::string>& hyperbolic = {});

struct SkeCheck {
    bool valid = false;
    std::string diagnostic;  // first failing condition, empty when valid
};

SkeCheck validate_ske(const Ske& s);

/// Phi_i (1-based): x_i -> x_{i+1}, x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}. gamma > 0 is unsupported.
Ske braid(const Ske& s, int i);
Ske apply_automorphism(const Ske& s, const Automorphism& phi);

/// A generating set of Aut(G), cached per group object.
const std::vector<Automorphism>& automorphism_generators(const GroupPtr& g);

struct EnumerationOptions {
    long max_skes = 2'000'000;
    std::optional<unsigned> shuffle_seed;  // permutes the order in which candidates are visited
};

/// Calls `visit` on every valid ske with exactly this (ordered) signature; stops early if it
/// returns false. Returns the number visited. Throws Error(Resource) past max_skes.
long enumerate_skes(const GroupPtr& g, const Signature& sig, const std::function<bool(const Ske&)>& visit,
                    const EnumerationOptions& opt = {});
/// True if some ske with this signature exists.
bool has_ske(const GroupPtr& g, const Signature& sig, const EnumerationOptions& opt = {});

struct OrbitReport {
    Signature signature;
    long total_skes = 0;               // skes with the signature in the given period order
    int orbit_count = 0;
    std::vector<Ske> representatives;  // lexicographically least tuple of each orbit
    std::vector<long> orbit_sizes;     // counted in the given period order
};

/// Orbits under braids (and, for gamma = 1, the two handle moves) together with Aut(G).
OrbitReport classify(const GroupPtr& g, const Signature& sig, const EnumerationOptions& opt = {});

/// Whether b lies in the orbit of a, by breadth-first search over the same moves.
bool equivalent(const Ske& a, const Ske& b, long max_states = 5'000'000);

struct QuotientData {
    int degree = 0;               // [G : K]
    long genus = 0;               // genus of S_K
    std::vector<int> periods;     // branch data r(K), grouped by the branch values of S -> S_G
    Signature signature() const { return Signature{static_cast<int>(genus), periods}; }
};

/// Branch data of S -> S_K from the action of the elliptic images on G/K.
QuotientData quotient_data(const Ske& s, const Subgroup& k);

/// genus(S_K) = 0 for every nontrivial K.
bool is_genus_zero_action(const Ske& s);

// ---- the quaternion-specific catalogue ------------------------------------------

/// Named actions of Q(2^n):
///   "F0"  (y, xy, x^2) on (1; 2^{n-2});  "F0x" (x, xy, x^2)
///   "F1"  theta_p = (xy, y, x^p y, x^{p+1} y) on (0; 4,4,4,4)
///   "F2"  theta_p = (x, x^{p-1+2^{n-2}}, y, x^p y) on (0; 2^{n-1}, 2^{n-1}, 4, 4)
///   "C"   (x^{1-2^{k-1}-2^{n-2}}, x^{2^{k-1}}, y, xy) on (0; 2^{n-1}, 2^{n-k}, 4, 4), param = k
Ske family_ske(const QuaternionGroup& q, std::string_view family, int param = 0);

struct FamilyEntry {
    std::string name;         // "F_{4,1}", "C_{4,2}", ...; empty for a signature outside the list
    Signature signature;
    long genus = 0;
    int orbit_bound = 0;      // stratum bound claimed for the family
    std::optional<int> orbit_count;
    long ske_count = 0;
};

/// Every signature of a one-dimensional family (3 gamma - 3 + l = 1) carrying at least one ske.
std::vector<FamilyEntry> one_dimensional_families(int n, bool count_orbits = true, const EnumerationOptions& opt = {});

/// sigma_b = (0; 2 (b times), 4, 4, 2^{n-1})
Signature sigma_b(int n, int b);
/// Witness with x_i -> y^2 on the b order-two slots.
Ske genus_zero_witness(const QuaternionGroup& q, int b);

struct GenusZeroEntry {
    int b = 0;
    Signature signature;
    long genus = 0;
    Ske witness;
    bool witness_valid = false;
    long skes_checked = 0;
    bool all_genus_zero = false;  // over every enumerated ske with signature sigma_b
    bool complete = false;        // enumeration was exhaustive
};

std::vector<GenusZeroEntry> genus_zero_actions(int n, int max_b, long max_skes_per_b = 20000);

struct GenusZeroCensusRow {
    Signature signature;
    bool genus_zero = false;     // every checked ske is genus-zero
    bool is_sigma_b = false;
    long skes = 0;               // skes checked
    long genus_zero_skes = 0;
};

/// Signatures with gamma <= 1 and at most max_periods periods that admit a ske (periods in
/// decreasing order; braids reach every other order). With `exhaustive` every ske is checked,
/// otherwise only the first one found.
std::vector<GenusZeroCensusRow> genus_zero_census(int n, int max_periods, bool exhaustive = false);

// ---- extensions ----------------------------------------------------------------

struct ExtensionReport {
    bool image_isomorphic = false;
    bool restriction_valid = false;
    bool equivalent = false;
    Rational mu_ratio;  // mu(Delta) / mu(Delta')
    long index = 0;     // [G' : image]
    bool mu_matches = false;
    Ske restriction;    // transported into theta's group
    bool ok() const { return image_isomorphic && restriction_valid && equivalent && mu_matches; }
};

/// Restricts theta_prime to the subgroup of the orbifold group spanned by the words (symbols y1..ys
/// for elliptic generators, a1,b1,... for hyperbolic ones), carries the result into theta's group
/// and compares topological classes. Throws Error(InvalidEmbedding) if the image is not isomorphic.
ExtensionReport check_extension(const Ske& theta, const Ske& theta_prime, const std::vector<std::string>& words,
                                const Signature& restricted_signature);

struct ExtensionCase {
    std::string family;
    std::string supergroup;
    Ske theta;
    Ske theta_prime;
    std::vector<std::string> words;
    Signature restricted_signature;
};

/// The three extension cases of the families F_{n,0}, F_{n,1} and F_{n,2} (twice).
std::vector<ExtensionCase> extension_cases(int n);

}  // namespace qact
