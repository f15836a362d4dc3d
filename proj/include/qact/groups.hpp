#pragma once

// Concrete finite groups of order <= 128 with a materialised Cayley table.
//
// Named groups are built from a polycyclic normal form g_0^{e_0} g_1^{e_1} ... g_{k-1}^{e_{k-1}}
// in which every prefix <g_0..g_i> is normal. The table is then checked exhaustively:
// Latin square, associativity, and the relators of the source presentation.

#include <bitset>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qact {

inline constexpr int kMaxGroupOrder = 128;
inline constexpr int kMaxGenericOrder = 64;  // automorphism / isomorphism searches

using ElementSet = std::bitset<kMaxGroupOrder>;

struct Element {
    std::uint16_t index = 0;
    friend auto operator<=>(const Element&, const Element&) = default;
};

/// Normal-form data. conjugates[j][i] (i < j) is g_j g_i g_j^{-1}; powers[i] is g_i^{p_i}.
/// Both are exponent vectors of length k supported on generators before index i (resp. up to i).
struct PcPresentation {
    std::vector<std::string> letters;
    std::vector<int> relative_orders;
    std::vector<std::vector<int>> powers;
    std::vector<std::vector<std::vector<int>>> conjugates;
};

class Subgroup {
public:
    Subgroup() = default;
    explicit Subgroup(std::vector<Element> elements, std::string label = {});
    Subgroup(const ElementSet& mask, int group_order, std::string label = {});

    const std::vector<Element>& elements() const { return elements_; }
    int order() const { return static_cast<int>(elements_.size()); }
    bool contains(Element g) const { return mask_.test(g.index); }
    const ElementSet& mask() const { return mask_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }

    bool is_contained_in(const Subgroup& other) const { return (mask_ & ~other.mask_).none(); }
    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.mask_ == b.mask_; }

private:
    std::vector<Element> elements_;
    ElementSet mask_;
    std::string label_;
};

class FiniteGroup {
public:
    /// relators are words in pc.letters that must evaluate to the identity.
    static FiniteGroup from_pc(std::string name, PcPresentation pc, std::vector<std::string> relators,
                               std::optional<int> expected_order = std::nullopt);

    /// table[a * order + b] = index of a*b; element 0 must be the identity.
    static FiniteGroup from_table(std::string name, std::vector<std::uint16_t> table, std::vector<std::string> names,
                                  std::vector<Element> generators, std::vector<std::string> generator_letters,
                                  std::vector<std::string> relators = {});

    /// The subgroup `h` of `parent` as a group in its own right; element names are inherited.
    static FiniteGroup from_subgroup(const FiniteGroup& parent, const Subgroup& h, std::string name);

    const std::string& name() const { return name_; }
    int order() const { return order_; }
    Element identity() const { return Element{0}; }
    std::vector<Element> elements() const;

    Element mul(Element a, Element b) const {
        return Element{table_[static_cast<std::size_t>(a.index) * order_ + b.index]};
    }
    Element inv(Element a) const { return inverse_[a.index]; }
    Element pow(Element a, long k) const;
    Element conjugate(Element g, Element h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1
    Element commutator(Element a, Element b) const { return mul(mul(a, b), mul(inv(a), inv(b))); }
    int element_order(Element a) const { return orders_[a.index]; }

    const std::string& element_name(Element a) const { return names_[a.index]; }
    /// Evaluates a word in the generator letters ("x^3*y", "c*a", "1").
    Element parse_element(std::string_view word) const;
    Element generator(std::string_view letter) const;

    bool has_pc() const { return pc_.has_value(); }
    const PcPresentation& pc() const;
    /// Normal-form exponents (pc groups only).
    const std::vector<int>& exponents(Element a) const;
    Element from_exponents(std::span<const int> exps) const;

    const std::vector<Element>& generators() const { return generators_; }
    const std::vector<std::string>& generator_letters() const { return letters_; }
    const std::vector<std::string>& relators() const { return relators_; }

    const std::vector<std::vector<Element>>& conjugacy_classes() const { return classes_; }
    int class_of(Element a) const { return class_of_[a.index]; }

    Subgroup generated_subgroup(std::span<const Element> gens) const;
    bool is_subgroup(std::span<const Element> elems) const;
    bool is_normal(const Subgroup& h) const;
    Subgroup center() const;
    Subgroup commutator_subgroup() const;
    /// Frattini subgroup; for 2-groups this is the subgroup generated by squares.
    Subgroup frattini() const;
    bool is_two_group() const { return two_group_; }

    /// True iff the elements generate the whole group.
    bool generates(std::span<const Element> elems) const;
    /// Smallest generating set, found through the Frattini quotient for 2-groups.
    std::vector<Element> minimal_generating_set() const;

    /// Every subgroup: cyclic subgroups, 2-generated subgroups, then closure under joins.
    std::vector<Subgroup> all_subgroups() const;
    std::vector<Subgroup> maximal_subgroups() const;
    /// One representative per conjugacy class of subgroups.
    std::vector<Subgroup> subgroup_class_representatives() const;
    bool are_conjugate(const Subgroup& a, const Subgroup& b) const;
    std::vector<Element> left_coset_representatives(const Subgroup& h) const;

    std::map<int, int> order_histogram() const;

    bool is_latin_square() const;
    bool is_associative() const;
    bool relators_hold() const;

private:
    FiniteGroup() = default;
    void finish_construction();

    std::string name_;
    int order_ = 0;
    std::vector<std::uint16_t> table_;
    std::vector<Element> inverse_;
    std::vector<int> orders_;
    std::vector<std::string> names_;
    std::vector<Element> generators_;
    std::vector<std::string> letters_;
    std::vector<std::string> relators_;
    std::optional<PcPresentation> pc_;
    std::vector<std::vector<int>> exps_;
    std::vector<std::vector<Element>> classes_;
    std::vector<int> class_of_;
    bool two_group_ = false;
    std::vector<std::uint32_t> frattini_coords_;  // coordinates in G/Phi(G) (2-groups only)
    int frattini_rank_ = 0;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

// ---- named groups ---------------------------------------------------------

/// Q(2^n) = <x, y | x^{2^{n-1}}, y^2 x^{2^{n-2}}, y x y^-1 x>, normal form x^a y^e.
FiniteGroup build_quaternion(int n);
/// G1(n), G2(n): supergroups of Q(2^n) of order 2^{n+1} generated by x, y, z.
FiniteGroup build_g1(int n);
FiniteGroup build_g2(int n);
/// <u, v | u^16, v^2, v u v u^-7>, order 32.
FiniteGroup build_qd16();
/// <a, b, c | a^2, b^2, c^4, bcbc^3, acac^3, abac^2b>, order 16.
FiniteGroup build_c4xc2_rtimes_c2();
/// <r, s, a, b | r^4, s^2, a^2, b^2, (sr)^2, arar^-1, (as)^2, brbr^-1, bsb(sra)^-1, bab(ar^2)^-1>, order 32.
FiniteGroup build_d4xc2_rtimes_c2();
/// <r, s | r^m, s^2, (sr)^2>, order 2m.
FiniteGroup build_dihedral(int m);
FiniteGroup build_cyclic(int m);

/// Accepts "Q16", "Q(16)", "G1(4)", "G2(5)", "QD16", "C4xC2_rtimes_C2", "D4xC2_rtimes_C2",
/// "Dihedral(4)", "C8".
FiniteGroup build_named(std::string_view spec);

// ---- subgroups of Q(2^n) --------------------------------------------------

/// K_i = <x^{2^{n-i}}> (i = 2..n), H_j = <x^{2^{n-j}}, y>, Ht_j = <x^{2^{n-j}}, xy> (j = 2..n-1).
/// Aliases: Z = K2, N1 = Kn, N2 = H_{n-1}, N3 = Ht_{n-1}; also "G" and "1".
class NamedSubgroups {
public:
    NamedSubgroups(const FiniteGroup& q, int n);

    /// Canonical labels only (K_i, H_j, Ht_j), each proper nontrivial subgroup class once.
    const std::map<std::string, Subgroup>& canonical() const { return canonical_; }
    const Subgroup& get(std::string_view label) const;
    bool has(std::string_view label) const;
    int n() const { return n_; }

private:
    int n_;
    std::map<std::string, Subgroup> canonical_;
    std::map<std::string, Subgroup, std::less<>> all_;
};

// ---- automorphisms and isomorphisms ---------------------------------------

struct Automorphism {
    std::vector<Element> images;  // images[g.index]
    Element operator()(Element g) const { return images[g.index]; }
    friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

/// Every automorphism, by brute force over images of a minimal generating set.
std::vector<Automorphism> automorphisms(const FiniteGroup& g);

/// An isomorphism G -> H as an image table indexed by G's elements, if one exists.
std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h);
bool isomorphic(const FiniteGroup& g, const FiniteGroup& h);

}  // namespace qact
