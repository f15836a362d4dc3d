#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "qact/error.hpp"
#include "qact/groups.hpp"

using namespace qact;

namespace {

// Multiplication rule of Q(2^n) on pairs (a, e) <-> x^a y^e, written out independently of the collector.
std::pair<int, int> q_mul(int n, std::pair<int, int> u, std::pair<int, int> v) {
    const int m = 1 << (n - 1);
    auto [a, e] = u;
    auto [b, f] = v;
    if (e == 0) return {((a + b) % m + m) % m, f};
    if (f == 0) return {((a - b) % m + m) % m, 1};
    return {((a - b + m / 2) % m + m) % m, 0};
}

// Burnside count of conjugacy classes: (1/|G|) sum |C_G(g)|.
int class_count_oracle(const FiniteGroup& g) {
    long total = 0;
    for (auto a : g.elements())
        for (auto b : g.elements())
            if (g.mul(a, b) == g.mul(b, a)) ++total;
    return static_cast<int>(total / g.order());
}

// Every subset of a group of order 16 tested for closure.
int subgroup_count_by_subsets(const FiniteGroup& g) {
    const int n = g.order();
    int count = 0;
    for (std::uint32_t m = 1; m < (1U << n); ++m) {
        if (!(m & 1U)) continue;
        bool closed = true;
        for (int a = 0; a < n && closed; ++a) {
            if (!((m >> a) & 1U)) continue;
            for (int b = 0; b < n; ++b)
                if (((m >> b) & 1U) && !((m >> g.mul(Element{(std::uint16_t)a}, Element{(std::uint16_t)b}).index) & 1U)) {
                    closed = false;
                    break;
                }
        }
        if (closed) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("quaternion normal form matches the closed multiplication rule") {
    for (int n = 3; n <= 6; ++n) {
        auto q = build_quaternion(n);
        CHECK(q.order() == (1 << n));
        for (auto a : q.elements())
            for (auto b : q.elements()) {
                auto ea = q.exponents(a), eb = q.exponents(b), ec = q.exponents(q.mul(a, b));
                auto r = q_mul(n, {ea[0], ea[1]}, {eb[0], eb[1]});
                REQUIRE(ec[0] == r.first);
                REQUIRE(ec[1] == r.second);
            }
    }
}

TEST_CASE("quaternion basics") {
    auto q8 = build_quaternion(3);
    int involutions = 0;
    for (auto g : q8.elements())
        if (q8.element_order(g) == 2) {
            ++involutions;
            CHECK(g == q8.parse_element("y^2"));
            CHECK(g == q8.parse_element("x^2"));
        }
    CHECK(involutions == 1);

    auto q16 = build_quaternion(4);
    CHECK(q16.element_order(q16.generator("x")) == 8);
    CHECK(q16.element_order(q16.parse_element("x*y")) == 4);
    CHECK(q16.conjugacy_classes().size() == 7);
    CHECK(class_count_oracle(q16) == 7);
    CHECK(q16.element_name(q16.parse_element("y*x")) == "x^7*y");
    CHECK(q16.parse_element("x^7*y") == q16.parse_element("y*x"));
    CHECK_THROWS_AS(build_quaternion(2), Error);
}

TEST_CASE("quaternion structural invariants") {
    for (int n = 3; n <= 6; ++n) {
        auto q = build_quaternion(n);
        auto hist = q.order_histogram();
        CHECK(hist[2] == 1);
        const Element x = q.generator("x");
        std::vector<Element> xs{q.mul(x, x)};
        CHECK(q.commutator_subgroup() == q.generated_subgroup(xs));
        CHECK(q.center().order() == 2);
        std::vector<Element> xg{x};
        int cyclic_index_two = 0;
        for (const auto& h : q.maximal_subgroups()) {
            if (h.order() != q.order() / 2) continue;
            bool cyclic = std::any_of(h.elements().begin(), h.elements().end(),
                                      [&](Element e) { return q.element_order(e) == h.order(); });
            if (cyclic) {
                ++cyclic_index_two;
                if (n > 3) CHECK(h == q.generated_subgroup(xg));
            }
        }
        CHECK(cyclic_index_two == (n == 3 ? 3 : 1));  // Q8 has three cyclic subgroups of index 2
        CHECK(class_count_oracle(q) == static_cast<int>(q.conjugacy_classes().size()));
        CHECK(static_cast<int>(q.conjugacy_classes().size()) == (1 << (n - 2)) + 3);
    }
}

TEST_CASE("named groups satisfy their relations") {
    auto g1 = build_g1(4);
    CHECK(g1.order() == 32);
    auto x = g1.generator("x"), y = g1.generator("y"), z = g1.generator("z");
    CHECK(g1.mul(z, x) == g1.mul(x, z));
    CHECK(g1.mul(g1.mul(z, y), z) == g1.inv(y));

    auto g2 = build_g2(5);
    CHECK(g2.order() == 64);
    CHECK(g2.relators_hold());

    auto qd = build_qd16();
    CHECK(qd.order() == 32);
    auto u = qd.generator("u"), v = qd.generator("v");
    CHECK(qd.mul(qd.mul(v, u), v) == qd.pow(u, 7));

    auto c = build_c4xc2_rtimes_c2();
    CHECK(c.order() == 16);
    std::vector<Element> q8gens{c.parse_element("c*a"), c.parse_element("b*a")};
    auto sub = FiniteGroup::from_subgroup(c, c.generated_subgroup(q8gens), "sub");
    CHECK(isomorphic(sub, build_quaternion(3)));

    auto d = build_d4xc2_rtimes_c2();
    CHECK(d.order() == 32);
    std::vector<Element> dq{d.parse_element("r*a"), d.parse_element("r*b")};
    auto dsub = FiniteGroup::from_subgroup(d, d.generated_subgroup(dq), "sub");
    CHECK(isomorphic(dsub, build_quaternion(3)));

    CHECK(build_named("Dihedral(4)").order() == 8);
    CHECK(build_named("G1(4)").order() == 32);
    CHECK(build_named("Q16").order() == 16);
    CHECK(build_named("Q(32)").order() == 32);
    CHECK_THROWS_AS(build_named("Bogus"), Error);

    for (const char* nm : {"G1(3)", "G2(4)", "QD16", "C4xC2_rtimes_C2", "D4xC2_rtimes_C2", "Dihedral(8)", "C8"}) {
        auto g = build_named(nm);
        CHECK(g.is_latin_square());
        CHECK(g.is_associative());
        CHECK(g.relators_hold());
        CHECK(g.generated_subgroup(g.generators()).order() == g.order());
        for (auto e : g.elements()) CHECK(g.mul(e, g.inv(e)) == g.identity());
    }
}

TEST_CASE("named subgroups of Q(2^n)") {
    auto q = build_quaternion(4);
    NamedSubgroups ns(q, 4);
    CHECK(ns.get("Z").order() == 2);
    CHECK(ns.get("Z").contains(q.parse_element("x^4")));
    CHECK(ns.get("N1").order() == 8);
    CHECK(ns.get("H2").order() == 4);
    CHECK(ns.canonical().size() == 7);

    for (int n = 3; n <= 6; ++n) {
        auto g = build_quaternion(n);
        NamedSubgroups s(g, n);
        // every nontrivial subgroup contains Z, K_i <= K_{i+1}
        for (const auto& h : g.all_subgroups())
            if (h.order() > 1) CHECK(s.get("Z").is_contained_in(h));
        for (int i = 2; i < n; ++i)
            CHECK(s.get("K" + std::to_string(i)).is_contained_in(s.get("K" + std::to_string(i + 1))));
        // normality tested, not assumed
        for (int i = 2; i <= n; ++i) CHECK(g.is_normal(s.get("K" + std::to_string(i))));
        for (int j = 2; j <= n - 1; ++j) {
            bool normal_expected = (j == n - 1);
            CHECK(g.is_normal(s.get("H" + std::to_string(j))) == normal_expected);
            CHECK(g.is_normal(s.get("Ht" + std::to_string(j))) == normal_expected);
        }
        // up to conjugacy the named list is exactly the set of proper nontrivial subgroups
        auto reps = g.subgroup_class_representatives();
        int proper = 0;
        for (const auto& r : reps) {
            if (r.order() == 1 || r.order() == g.order()) continue;
            ++proper;
            int hits = 0;
            for (const auto& [label, h] : s.canonical())
                if (g.are_conjugate(r, h)) ++hits;
            CHECK(hits == 1);
        }
        CHECK(proper == static_cast<int>(s.canonical().size()));
    }
}

namespace {

std::size_t two_generated_count(const FiniteGroup& g) {
    std::set<std::string> seen;
    for (auto a : g.elements())
        for (auto b : g.elements()) {
            std::vector<Element> ab{a, b};
            seen.insert(g.generated_subgroup(ab).mask().to_string());
        }
    return seen.size();
}

}  // namespace

TEST_CASE("subgroup enumeration agrees with subset search") {
    for (auto g : {build_quaternion(4), build_c4xc2_rtimes_c2(), build_dihedral(8)})
        CHECK(static_cast<int>(g.all_subgroups().size()) == subgroup_count_by_subsets(g));
    // every subgroup of Q(2^n) is 2-generated, so the join pass adds nothing there
    for (int n = 3; n <= 6; ++n) {
        auto g = build_quaternion(n);
        CHECK(two_generated_count(g) == g.all_subgroups().size());
    }
    // (C4xC2)xC2 contains an elementary abelian subgroup of rank 3 that only the join pass finds
    auto c = build_c4xc2_rtimes_c2();
    CHECK(two_generated_count(c) + 1 == c.all_subgroups().size());
}

TEST_CASE("automorphisms") {
    auto q8 = build_quaternion(3);
    auto aut8 = automorphisms(q8);
    CHECK(aut8.size() == 24);

    auto q16 = build_quaternion(4);
    auto aut = automorphisms(q16);
    std::vector<Element> id = q16.elements();
    CHECK(std::any_of(aut.begin(), aut.end(), [&](const Automorphism& a) { return a.images == id; }));
    const Element x = q16.generator("x"), y = q16.generator("y"), xy = q16.mul(x, y);
    CHECK(std::any_of(aut.begin(), aut.end(), [&](const Automorphism& a) { return a(x) == x && a(y) == xy; }));

    // oracle: generating pairs that satisfy the defining relators of Q16
    int pairs = 0;
    for (auto a : q16.elements())
        for (auto b : q16.elements()) {
            bool rel = q16.pow(a, 8) == q16.identity() && q16.mul(q16.mul(b, b), q16.pow(a, 4)) == q16.identity() &&
                       q16.mul(q16.mul(b, a), q16.mul(q16.inv(b), a)) == q16.identity();
            std::vector<Element> ab{a, b};
            if (rel && q16.generated_subgroup(ab).order() == 16) ++pairs;
        }
    CHECK(static_cast<int>(aut.size()) == pairs);
    MESSAGE("|Aut(Q16)| = " << aut.size());

    // closed under composition
    std::set<std::vector<Element>> all;
    for (const auto& a : aut) all.insert(a.images);
    for (const auto& a : aut)
        for (const auto& b : aut) {
            std::vector<Element> c(q16.order());
            for (auto g : q16.elements()) c[g.index] = a(b(g));
            REQUIRE(all.count(c) == 1);
        }
}

TEST_CASE("isomorphism tests") {
    auto q8 = build_quaternion(3);
    CHECK(isomorphic(q8, build_quaternion(3)));
    CHECK_FALSE(isomorphic(q8, build_cyclic(8)));
    CHECK_FALSE(isomorphic(q8, build_dihedral(4)));
    bool g13 = isomorphic(build_g1(3), build_c4xc2_rtimes_c2());
    MESSAGE("G1(3) isomorphic to C4xC2_rtimes_C2: " << g13);
    MESSAGE("G1(4) isomorphic to G2(4): " << isomorphic(build_g1(4), build_g2(4)));
}
