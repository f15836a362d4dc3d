#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "qact/actions.hpp"
#include "qact/decomp.hpp"
#include "qact/error.hpp"

using namespace qact;

namespace {

std::vector<int> sorted_desc(std::vector<int> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

std::vector<int> repeat(int value, int times) { return std::vector<int>(std::max(times, 0), value); }

std::vector<int> concat(std::initializer_list<std::vector<int>> parts) {
    std::vector<int> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return sorted_desc(out);
}

QuotientData quot(const QuaternionGroup& q, const Ske& s, const std::string& label) {
    return quotient_data(s, q.subgroups().get(label));
}

long genus_of(const QuaternionGroup& q, const Ske& s, const std::string& label) { return quot(q, s, label).genus; }

// Naive count of generating tuples with prescribed orders and trivial product: every slot free.
long naive_count(const FiniteGroup& g, const std::vector<int>& periods) {
    const auto el = g.elements();
    long count = 0;
    std::vector<Element> t(periods.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == periods.size()) {
            Element p = g.identity();
            for (auto e : t) p = g.mul(p, e);
            if (p == g.identity() && g.generates(t)) ++count;
            return;
        }
        for (auto e : el) {
            if (g.element_order(e) != periods[i]) continue;
            t[i] = e;
            rec(i + 1);
        }
    };
    rec(0);
    return count;
}

// Orbifold Euler characteristic 2g - 2 + sum(1 - 1/r) of a quotient.
Rational orbifold_chi(const QuotientData& d) {
    Rational c(2 * d.genus - 2);
    for (int r : d.periods) c += Rational(r - 1, r);
    c.canonicalize();
    return c;
}

}  // namespace

TEST_CASE("signatures and Riemann-Hurwitz") {
    CHECK(genus_from_signature(16, Signature::parse("0:4,4,4,4")) == 9);
    CHECK(genus_from_signature(16, Signature::parse("(1; 4)")) == 7);
    CHECK(genus_from_signature(16, Signature{0, {2, 2, 2}}) == std::nullopt);
    CHECK(genus_from_signature(8, Signature{0, {4, 4, 3}}) == std::nullopt);
    for (int n = 3; n <= 7; ++n)
        for (int b = 0; b <= 6; ++b) CHECK(genus_from_signature(1L << n, sigma_b(n, b)) == (1L << (n - 2)) * (b + 1));
    CHECK(Signature::parse("0:8,8,4,4").to_string() == "(0; 8,8,4,4)");
    CHECK(Signature::parse("1:").periods.empty());
    CHECK_THROWS_AS(Signature::parse("0:4,1"), Error);
    CHECK_THROWS_AS(Signature::parse("4,4"), Error);
    CHECK(Signature{0, {4, 4, 4, 4}}.mu() == 1);
}

TEST_CASE("validating skes") {
    for (int n = 3; n <= 6; ++n) {
        QuaternionGroup q(n);
        auto f0 = family_ske(q, "F0");
        CHECK(validate_ske(f0).valid);
        CHECK(f0.signature == Signature{1, {1 << (n - 2)}});
        for (int p = 0; p < q.m(); p += 2) CHECK(validate_ske(family_ske(q, "F1", p)).valid);
        for (int p = 0; p < q.m(); p += 2) CHECK(validate_ske(family_ske(q, "F2", p)).valid);
        for (int k = 2; k <= n - 1; ++k) CHECK(validate_ske(family_ske(q, "C", k)).valid);
        // with x in place of y the product is x^4, trivial only in Q8
        auto other = family_ske(q, "F0x");
        CHECK(validate_ske(other).valid == (n == 3));
        if (n > 3) CHECK(validate_ske(other).diagnostic == "product relation fails: product is x^4");
    }
    QuaternionGroup q(4);
    auto s = make_ske(q.group_ptr(), Signature{0, {8, 8, 4, 4}}, {"x", "x", "y", "y"});
    auto r = validate_ske(s);
    CHECK_FALSE(r.valid);
    CHECK(r.diagnostic == "product relation fails: product is x^6");
    auto wrong_order = make_ske(q.group_ptr(), Signature{0, {4, 4, 4, 4}}, {"x", "y", "y", "x"});
    CHECK(validate_ske(wrong_order).diagnostic.find("has order 8") != std::string::npos);
    auto not_gen = make_ske(q.group_ptr(), Signature{0, {4, 4, 4, 4}}, {"y", "y", "y", "y"});
    CHECK(validate_ske(not_gen).diagnostic == "images do not generate the group");
    // the (xy, y, y^-1, x y^-1) form is theta_p with p = 2^{n-2}
    auto green = make_ske(q.group_ptr(), Signature{0, {4, 4, 4, 4}}, {"x*y", "y", "y^-1", "x*y^-1"});
    CHECK(validate_ske(green).valid);
    CHECK(green.elliptic == family_ske(q, "F1", 4).elliptic);
}

TEST_CASE("braid moves") {
    QuaternionGroup q(4);
    const auto& g = q.group();
    auto theta = make_ske(q.group_ptr(), Signature{0, {4, 4, 4, 4}}, {"x*y", "y", "y^-1", "x*y^-1"});
    auto b1 = braid(theta, 1);
    CHECK(b1.elliptic == std::vector<Element>{q.y(), g.parse_element("x^-1*y"), g.inv(q.y()), g.parse_element("x*y^-1")});
    CHECK(validate_ske(b1).valid);
    for (int n = 3; n <= 5; ++n) {
        QuaternionGroup qn(n);
        for (int p = 0; p < qn.m(); p += 2) {
            auto t = family_ske(qn, "F1", p);
            CHECK(braid(braid(t, 3), 3).elliptic == family_ske(qn, "F1", (p + 2) % qn.m()).elliptic);
            for (int i = 1; i <= 3; ++i) {
                auto u = braid(t, i);
                CHECK(validate_ske(u).valid);
                CHECK(equivalent(u, t));
            }
        }
    }
    CHECK_THROWS_AS(braid(family_ske(q, "F0"), 1), Error);
    CHECK_THROWS_AS(braid(theta, 4), Error);
    // automorphisms preserve validity
    for (const auto& phi : automorphisms(g)) CHECK(validate_ske(apply_automorphism(theta, phi)).valid);
}

TEST_CASE("classification of small signatures") {
    QuaternionGroup q3(3), q4(4);
    auto r = classify(q4.group_ptr(), Signature{0, {4, 4, 4, 4}});
    CHECK(r.orbit_count == 1);
    CHECK(r.total_skes == naive_count(q4.group(), {4, 4, 4, 4}));
    CHECK(classify(q3.group_ptr(), Signature{0, {4, 4, 4, 4}}).orbit_count == 1);

    auto f2 = classify(q4.group_ptr(), Signature{0, {8, 8, 4, 4}});
    CHECK(f2.orbit_count >= 1);
    CHECK(f2.orbit_count <= 4);
    CHECK(f2.orbit_count == 2);
    CHECK(f2.total_skes == naive_count(q4.group(), {8, 8, 4, 4}));
    long sum = 0;
    for (long s : f2.orbit_sizes) sum += s;
    CHECK(sum == f2.total_skes);
    for (const auto& rep : f2.representatives) CHECK(validate_ske(rep).valid);

    // the order of enumeration does not matter
    for (unsigned seed : {1u, 2u, 3u, 99u}) {
        EnumerationOptions opt;
        opt.shuffle_seed = seed;
        auto s = classify(q4.group_ptr(), Signature{0, {8, 8, 4, 4}}, opt);
        CHECK(s.orbit_count == f2.orbit_count);
        CHECK(s.orbit_sizes == f2.orbit_sizes);
        for (std::size_t i = 0; i < s.representatives.size(); ++i)
            CHECK(s.representatives[i].elliptic == f2.representatives[i].elliptic);
    }

    // genus-one quotient
    auto f0 = classify(q4.group_ptr(), Signature{1, {4}});
    CHECK(f0.orbit_count == 1);

    EnumerationOptions tiny;
    tiny.max_skes = 10;
    CHECK_THROWS_AS(classify(q4.group_ptr(), Signature{0, {4, 4, 4, 4}}, tiny), Error);
}

TEST_CASE("F2 strata and the two extension strata") {
    for (int n = 4; n <= 5; ++n) {
        QuaternionGroup q(n);
        const int m = q.m();
        // which theta_p fall together
        std::set<std::set<int>> classes;
        for (int p = 0; p < m; p += 2) {
            std::set<int> c;
            for (int p2 = 0; p2 < m; p2 += 2)
                if (equivalent(family_ske(q, "F2", p), family_ske(q, "F2", p2))) c.insert(p2);
            classes.insert(c);
        }
        auto rep = classify(q.group_ptr(), Signature{0, {m, m, 4, 4}});
        CHECK(static_cast<int>(classes.size()) == rep.orbit_count);
        CHECK_FALSE(equivalent(family_ske(q, "F2", m / 2), family_ske(q, "F2", 2)));
        MESSAGE("n=" << n << " F2 orbits: " << rep.orbit_count);
    }
    // the two forms of the F1 ske lie in one class
    for (int n = 3; n <= 5; ++n) {
        QuaternionGroup q(n);
        CHECK(equivalent(family_ske(q, "F1", 0), family_ske(q, "F1", q.m() / 2)));
    }
}

TEST_CASE("one-dimensional families") {
    for (int n = 3; n <= 5; ++n) {
        auto fams = one_dimensional_families(n);
        const long h = 1L << (n - 2);
        CHECK(static_cast<int>(fams.size()) == (n == 3 ? 3 : n + 1));
        for (const auto& f : fams) {
            REQUIRE_FALSE(f.name.empty());
            REQUIRE(f.orbit_count.has_value());
            CHECK(*f.orbit_count >= 1);
            CHECK(*f.orbit_count <= f.orbit_bound);
            CHECK(3 * f.signature.gamma - 3 + static_cast<int>(f.signature.periods.size()) == 1);
        }
        const std::string ns = std::to_string(n);
        auto find = [&](const std::string& name) -> const FamilyEntry& {
            for (const auto& f : fams)
                if (f.name == name) return f;
            FAIL("missing " << name);
            throw 0;
        };
        CHECK(find("F_{" + ns + ",0}").genus == 2 * h - 1);
        CHECK(find("F_{" + ns + ",0}").orbit_count == 1);
        if (n > 3) {
            CHECK(find("F_{" + ns + ",1}").genus == 2 * h + 1);
            CHECK(find("F_{" + ns + ",1}").orbit_count == 1);
            CHECK(find("F_{" + ns + ",2}").genus == 3 * h - 1);
        } else {
            CHECK(find("F_{3,1}=F_{3,2}").genus == 5);
            CHECK(find("F_{3,1}=F_{3,2}").orbit_count == 1);
        }
        for (int k = 2; k <= n - 1; ++k) {
            const auto& c = find("C_{" + ns + "," + std::to_string(k) + "}");
            CHECK(c.genus == 3 * h - (1L << (k - 1)));
            if (k == n - 1) CHECK(c.orbit_count == 1);
        }
    }
    // recorded exact stratum counts
    auto f4 = one_dimensional_families(4);
    auto f5 = one_dimensional_families(5);
    auto count = [](const std::vector<FamilyEntry>& v, const std::string& name) {
        for (const auto& f : v)
            if (f.name == name) return *f.orbit_count;
        return -1;
    };
    CHECK(count(f4, "F_{4,2}") == 2);
    CHECK(count(f4, "C_{4,2}") == 1);
    CHECK(count(f5, "F_{5,2}") == 3);
    CHECK(count(f5, "C_{5,2}") == 2);
    CHECK(count(f5, "C_{5,3}") == 1);
}

TEST_CASE("census cross-check by naive enumeration") {
    QuaternionGroup q(4);
    const std::vector<int> orders{8, 4, 2};
    std::set<std::vector<int>> with_skes;
    for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b)
            for (int c = b; c < 3; ++c)
                for (int d = c; d < 3; ++d) {
                    std::vector<int> p{orders[a], orders[b], orders[c], orders[d]};
                    if (!genus_from_signature(16, Signature{0, p})) continue;
                    if (naive_count(q.group(), p) > 0) with_skes.insert(p);
                }
    std::set<std::vector<int>> census;
    for (const auto& f : one_dimensional_families(4, false))
        if (f.signature.gamma == 0) census.insert(f.signature.sorted().periods);
    CHECK(census == with_skes);
}

TEST_CASE("quotient data: consistency") {
    for (int n = 3; n <= 5; ++n) {
        QuaternionGroup q(n);
        const auto& g = q.group();
        std::vector<Ske> skes{family_ske(q, "F0"), family_ske(q, "F1", 0), family_ske(q, "F2", 2)};
        for (int k = 2; k <= n - 1; ++k) skes.push_back(family_ske(q, "C", k));
        for (int b = 0; b <= 3; ++b) skes.push_back(genus_zero_witness(q, b));
        auto subs = g.all_subgroups();
        for (const auto& s : skes) {
            REQUIRE(validate_ske(s).valid);
            auto one = quot(q, s, "1");
            CHECK(one.genus == s.genus());
            CHECK(one.periods.empty());
            auto whole = quot(q, s, "G");
            CHECK(whole.genus == s.signature.gamma);
            CHECK(whole.periods == s.signature.periods);
            const Rational chi_s(2 * s.genus() - 2);
            for (const auto& k : subs) {
                auto d = quotient_data(s, k);
                CHECK(chi_s == Rational(k.order()) * orbifold_chi(d));
                for (const auto& k2 : subs)
                    if (k.is_contained_in(k2) && k.order() < k2.order())
                        CHECK(orbifold_chi(d) == Rational(k2.order() / k.order()) * orbifold_chi(quotient_data(s, k2)));
            }
        }
    }
}

TEST_CASE("branch data of the families") {
    for (int n = 4; n <= 6; ++n) {
        QuaternionGroup q(n);
        const int h = 1 << (n - 2), m = 1 << (n - 1);

        auto f0 = family_ske(q, "F0");
        CHECK(sorted_desc(quot(q, f0, "Z").periods) == repeat(2, 4));
        CHECK(genus_of(q, f0, "Z") == h - 1);
        for (int j = 2; j <= n - 2; ++j) {
            auto d = quot(q, f0, "H" + std::to_string(j));
            CHECK(d.periods == repeat(1 << (j - 1), 2));
            CHECK(d.genus == (1L << (n - j - 1)));
        }
        for (const char* l : {"N1", "N2", "N3", "G"}) CHECK(genus_of(q, f0, l) == 1);

        for (int p : {0, m / 2}) {
            auto f1 = family_ske(q, "F1", p);
            CHECK(quot(q, f1, "Z").periods == repeat(2, 1 << n));
            CHECK(genus_of(q, f1, "Z") == 1);
            auto h2 = quot(q, f1, "H2");
            CHECK(sorted_desc(h2.periods) == concat({repeat(4, 4), repeat(2, m - 2)}));
            CHECK(h2.genus == 0);
            CHECK(genus_of(q, f1, "N1") == 1);
            CHECK(genus_of(q, f1, "N2") == 0);
            CHECK(genus_of(q, f1, "N3") == 0);
            for (int j = 2; j <= n - 2; ++j) CHECK(genus_of(q, f1, "H" + std::to_string(j)) == 0);
        }

        for (int p = 0; p < m; p += 2) {
            auto f2 = family_ske(q, "F2", p);
            for (int j = 2; j <= n - 1; ++j) {
                auto d = quot(q, f2, "H" + std::to_string(j));
                const int t = 1 << (j - 1);
                CHECK(sorted_desc(d.periods) == concat({{t, t}, repeat(4, 4), repeat(2, (1 << (n - j)) - 2)}));
                CHECK(d.genus == (1L << (n - j - 1)) - 1);
            }
            // the count of order-two branch values over Z is 2^{n-1} + 4 (eight only when n = 3)
            CHECK(quot(q, f2, "Z").periods == repeat(2, m + 4));
            CHECK(genus_of(q, f2, "Z") == h - 1);
            CHECK(sorted_desc(quot(q, f2, "N1").periods) == concat({repeat(m, 4), {2, 2}}));
            CHECK(sorted_desc(quot(q, f2, "N3").periods) == concat({{h, h}, {2, 2}}));
            CHECK(genus_of(q, f2, "N1") == 0);
            CHECK(genus_of(q, f2, "N2") == 0);
            CHECK(genus_of(q, f2, "N3") == 1);
        }

        for (int k = 2; k <= n - 1; ++k) {
            auto c = family_ske(q, "C", k);
            CHECK(quot(q, c, "Z").periods == repeat(2, m + (1 << k) + 2));
            CHECK(genus_of(q, c, "Z") == h - (1L << (k - 1)));
            for (const char* l : {"N1", "N2", "N3"}) CHECK(genus_of(q, c, l) == 0);
            if (k > n - 2) continue;
            for (int j = 2; j <= n - 1; ++j) {
                auto d = quot(q, c, "H" + std::to_string(j));
                const int dd = 1 << (n - j), d2 = (1 << (k - 1)) + 1, t = 1 << (j - 1);
                std::vector<int> expect = j >= n - k + 1 ? concat({repeat(2, dd - 1), {4, 4, t}, repeat(1 << (n - k), dd)})
                                                         : concat({repeat(2, dd - 1), {4, 4}, repeat(t, d2)});
                CHECK(sorted_desc(d.periods) == expect);
                CHECK(d.genus == (j <= n - k ? (1L << (n - j - 1)) - (1L << (k - 2)) : 0));
            }
        }
    }
}

TEST_CASE("quotient genera determine the analytic representation") {
    for (int n = 4; n <= 5; ++n) {
        QuaternionGroup q(n);
        const long h = 1L << (n - 2), m = 1L << (n - 1);
        auto prym_h = [&](const FactorTable& t, int j) { return t.dim_prym_H().at(j); };

        auto f0 = family_ske(q, "F0");
        auto s0 = multiplicities_from_quotient_genera(q, f0);
        auto t0 = factor_dimensions(q, s0.mv);
        CHECK(s0.mv.a == std::array<long, 4>{1, 0, 0, 0});
        for (const auto& [s, v] : s0.mv.b) CHECK(v == 1);
        CHECK(t0.dim_prym_A_over_AZ() == h);
        for (int j = 2; j <= n - 2; ++j) CHECK(prym_h(t0, j) == (1L << (n - j - 2)));
        CHECK(t0.weighted_total() == f0.genus());

        auto f1 = family_ske(q, "F1", 0);
        auto s1 = multiplicities_from_quotient_genera(q, f1);
        auto t1 = factor_dimensions(q, s1.mv);
        CHECK(t1.dim_prym_A_over_AZ() == m);
        CHECK(dim_fixed_subvariety(q, s1.mv, q.subgroups().get("N1")) == 1);
        CHECK(dim_fixed_subvariety(q, s1.mv, q.subgroups().get("Z")) == 1);
        CHECK(t1.weighted_total() == f1.genus());

        for (int p = 0; p < m; p += 2) {
            auto f2 = family_ske(q, "F2", p);
            auto s2 = multiplicities_from_quotient_genera(q, f2);
            auto t2 = factor_dimensions(q, s2.mv);
            CHECK(t2.dim_prym_A_over_AZ() == m);
            for (int j = 2; j <= n - 2; ++j) CHECK(prym_h(t2, j) == (1L << (n - 2 - j)));
            CHECK(dim_fixed_subvariety(q, s2.mv, q.subgroups().get("N3")) == 1);
            CHECK(dim_fixed_subvariety(q, s2.mv, q.subgroups().get("H" + std::to_string(n - 2))) == 1);
            CHECK(t2.weighted_total() == f2.genus());
        }

        for (int k = 2; k <= n - 1; ++k) {
            auto c = family_ske(q, "C", k);
            auto sc = multiplicities_from_quotient_genera(q, c);
            auto tc = factor_dimensions(q, sc.mv);
            CHECK(tc.weighted_total() == c.genus());
            auto report = is_trivial_decomposition(q, sc.mv);
            CHECK(report.agree());
            CHECK(report.flags()[0] == (k == n - 1));
            CHECK(is_genus_zero_action(c) == (k == n - 1));
            if (k > n - 2) continue;
            CHECK(tc.dim_prym_A_over_AZ() == m);
        }
        // families other than C_{n,n-1} have nontrivial decompositions
        for (const auto& s : {f0, f1, family_ske(q, "F2", 2)}) {
            CHECK_FALSE(is_genus_zero_action(s));
            CHECK_FALSE(is_trivial_decomposition(q, multiplicities_from_quotient_genera(q, s).mv).flags()[0]);
        }
    }
    QuaternionGroup q4(4);
    auto c42 = multiplicities_from_quotient_genera(q4, family_ske(q4, "C", 2));
    CHECK(dim_fixed_subvariety(q4, c42.mv, q4.subgroups().get("H2")) == 1);
    CHECK(factor_dimensions(q4, c42.mv).dim_prym_A_over_AZ() == 8);
    auto f41 = multiplicities_from_quotient_genera(q4, family_ske(q4, "F1", 0));
    CHECK(f41.mv.a == std::array<long, 4>{0, 1, 0, 0});
    CHECK(f41.mv.b == std::map<int, long>{{1, 2}, {2, 0}, {3, 2}});
}

TEST_CASE("n = 3 families") {
    QuaternionGroup q(3);
    auto f0 = family_ske(q, "F0");
    CHECK(f0.genus() == 3);
    auto f1 = family_ske(q, "F1", 0);
    CHECK(f1.genus() == 5);
    CHECK(genus_of(q, f1, "Z") == 1);
    auto c = family_ske(q, "C", 2);
    CHECK(c.genus() == 4);
    auto sc = multiplicities_from_quotient_genera(q, c);
    CHECK(sc.mv.a == std::array<long, 4>{0, 0, 0, 0});
    CHECK(sc.mv.b.at(1) == 2);
    auto r = is_trivial_decomposition(q, sc.mv);
    CHECK(r.flags() == std::array<bool, 5>{true, true, true, true, true});
    // the Z-quotient of the genus-four surfaces is the line (hyperelliptic)
    CHECK(genus_of(q, c, "Z") == 0);
}

TEST_CASE("genus-zero actions") {
    for (int n = 3; n <= 5; ++n) {
        auto entries = genus_zero_actions(n, 4);
        REQUIRE(entries.size() == 5);
        for (const auto& e : entries) {
            CHECK(e.genus == (1L << (n - 2)) * (e.b + 1));
            CHECK(e.witness_valid);
            CHECK(e.skes_checked > 0);
            CHECK(e.all_genus_zero);
        }
        CHECK(entries[0].signature == Signature{0, {4, 4, 1 << (n - 1)}});
        CHECK(entries[0].genus == (1L << (n - 2)));
    }
    QuaternionGroup q4(4);
    auto w1 = genus_zero_witness(q4, 1);
    CHECK(validate_ske(w1).valid);
    CHECK(w1.genus() == 8);
}

TEST_CASE("genus-zero census: exactly the sigma_b") {
    for (auto [n, maxp] : std::vector<std::pair<int, int>>{{3, 7}, {4, 6}, {5, 5}}) {
        auto rows = genus_zero_census(n, maxp);
        int hits = 0;
        for (const auto& r : rows) {
            CHECK_MESSAGE(r.genus_zero == r.is_sigma_b, r.signature.to_string());
            hits += r.genus_zero;
        }
        CHECK(hits == maxp - 2);  // b = 0 .. maxp - 3
    }
}

TEST_CASE("Z-branch count identity") {
    for (int n = 3; n <= 5; ++n) {
        QuaternionGroup q(n);
        std::vector<Ske> skes;
        for (int b = 0; b <= 3; ++b)
            enumerate_skes(q.group_ptr(), sigma_b(n, b), [&](const Ske& s) {
                skes.push_back(s);
                return skes.size() % 200 != 0;
            });
        skes.push_back(family_ske(q, "F1", 0));
        skes.push_back(family_ske(q, "F2", 2));
        for (int k = 2; k <= n - 1; ++k) skes.push_back(family_ske(q, "C", k));
        for (const auto& s : skes) {
            // d = a 2^{n-2} + b 2^{n-1} + sum c_k 2^k
            long a = 0, b = 0, d = 0;
            std::map<int, long> c;
            for (auto e : s.elliptic) {
                const int o = q.group().element_order(e);
                if (q.normal_form(e).second == 1)
                    ++a;
                else if (o == 2)
                    ++b;
                else
                    ++c[n - __builtin_ctz(o)];  // order 2^{n-k}
            }
            d = a * (1L << (n - 2)) + b * (1L << (n - 1));
            for (const auto& [k, ck] : c) d += ck * (1L << k);
            CHECK(static_cast<long>(quot(q, s, "Z").periods.size()) == d);
        }
    }
}

TEST_CASE("extensions to the supergroups") {
    for (int n = 3; n <= 5; ++n) {
        for (const auto& c : extension_cases(n)) {
            CAPTURE(n);
            CAPTURE(c.family);
            CAPTURE(c.supergroup);
            REQUIRE(validate_ske(c.theta_prime).valid);
            auto r = check_extension(c.theta, c.theta_prime, c.words, c.restricted_signature);
            CHECK(r.image_isomorphic);
            CHECK(r.restriction_valid);
            CHECK(r.equivalent);
            CHECK(r.index == 2);
            CHECK(r.mu_ratio == 2);
            CHECK(r.ok());
        }
    }
    QuaternionGroup q(4);
    auto cases = extension_cases(4);
    // F0: the restriction is (y^-1, x y^-1, x^2)
    auto r0 = check_extension(cases[0].theta, cases[0].theta_prime, cases[0].words, cases[0].restricted_signature);
    const auto& g = q.group();
    CHECK(r0.restriction.hyperbolic == std::vector<Element>{g.parse_element("y^-1"), g.parse_element("x*y^-1")});
    CHECK_THROWS_AS(check_extension(cases[0].theta, cases[0].theta_prime, {"y1", "y1", "y4^2"}, cases[0].restricted_signature),
                    Error);
}

TEST_CASE("the order-eight case and its supergroups") {
    QuaternionGroup q(3);
    auto big = std::make_shared<const FiniteGroup>(build_c4xc2_rtimes_c2());
    auto theta_prime = make_ske(big, Signature{0, {2, 2, 2, 4}}, {"a", "b", "a*b*c^-1", "c^-1"});
    REQUIRE(validate_ske(theta_prime).valid);
    CHECK(theta_prime.genus() == 3);
    const Element gens[2] = {big->parse_element("c*a"), big->parse_element("b*a")};
    auto h = big->generated_subgroup(gens);
    auto d = quotient_data(theta_prime, h);
    CHECK(d.signature() == Signature{1, {2}});
    auto r = check_extension(family_ske(q, "F0"), theta_prime, {"y1*y2", "y4*y2", "y4^2"}, Signature{1, {2}});
    CHECK(r.ok());

    auto big2 = std::make_shared<const FiniteGroup>(build_d4xc2_rtimes_c2());
    const Element gens2[2] = {big2->parse_element("r*a"), big2->parse_element("r*b")};
    auto h2 = big2->generated_subgroup(gens2);
    long total = 0, restrict_ok = 0;
    enumerate_skes(big2, Signature{0, {2, 2, 2, 4}}, [&](const Ske& s) {
        ++total;
        if (quotient_data(s, h2).signature().sorted() == Signature{0, {4, 4, 4, 4}}) ++restrict_ok;
        CHECK(s.genus() == 5);
        return true;
    });
    CHECK(total > 0);
    CHECK(restrict_ok == total);
}

TEST_CASE("genus-zero census: exhaustive counts") {
    for (auto [n, maxp] : std::vector<std::pair<int, int>>{{3, 7}, {4, 5}}) {
        for (const auto& r : genus_zero_census(n, maxp, true)) {
            CHECK(r.skes > 0);
            if (r.is_sigma_b)
                CHECK_MESSAGE(r.genus_zero_skes == r.skes, r.signature.to_string());
            else
                CHECK_MESSAGE(r.genus_zero_skes == 0, r.signature.to_string());
        }
    }
}
