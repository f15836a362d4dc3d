// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "qact/actions.hpp"
#include "qact/curves.hpp"
#include "qact/decomp.hpp"
#include "qact/error.hpp"
#include "qact/reptheory.hpp"
#include "qact/siegel.hpp"

using namespace qact;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream notes;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) notes << what;
            else notes << "; " << what;
            ok = false;
        }
    }
};

using Vec = std::vector<int>;

Vec repeat(int v, int k) { return Vec(std::max(k, 0), v); }

Vec concat(std::initializer_list<Vec> parts) {
    Vec out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

Vec sorted_desc(Vec v) {
    std::sort(v.rbegin(), v.rend());
    return v;
}

QuotientData quot(const QuaternionGroup& q, const Ske& s, const std::string& label) {
    return quotient_data(s, q.subgroups().get(label));
}

long genus_of(const QuaternionGroup& q, const Ske& s, const std::string& label) { return quot(q, s, label).genus; }

MultiplicityVector random_mv(const QuaternionGroup& q, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(0, 4);
    std::bernoulli_distribution zero(0.35);
    std::array<long, 4> a{};
    for (auto& v : a) v = zero(rng) ? 0 : d(rng);
    std::vector<long> b;
    for (int l = 1; l <= q.n() - 2; ++l) b.push_back(zero(rng) ? 0 : d(rng));
    return MultiplicityVector::from_orbits(q, a, b);
}

long dim_of(const QuaternionGroup& q, const MultiplicityVector& mv, const std::string& label) {
    return dim_fixed_subvariety(q, mv, q.subgroups().get(label));
}

IntMatrix power(const IntMatrix& m, int k) {
    IntMatrix r = IntMatrix::identity(m.rows());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

// ---- criteria -----------------------------------------------------------------------

void characters(Check& c) {
    for (int n = 3; n <= 6; ++n) {
        QuaternionGroup q(n);
        const auto& g = q.group();
        auto irr = irreducible_characters(q);
        const std::string tag = "n=" + std::to_string(n) + ": ";
        c.require(static_cast<int>(irr.size()) == (1 << (n - 2)) + 3, tag + "irreducible count");
        Rational sum = 0;
        for (const auto& chi : irr) {
            const Rational d = chi.degree(g).to_rational();
            sum += d * d;
        }
        c.require(sum == Rational(1L << n), tag + "sum of squared degrees");
        for (std::size_t i = 0; i < irr.size(); ++i)
            for (std::size_t j = 0; j < irr.size(); ++j)
                c.require(inner_product(g, irr[i], irr[j]) == Rational(i == j ? 1 : 0), tag + "orthogonality");

        const auto& s = q.subgroups();
        auto ri = rational_irreducibles(q);
        auto rho = [&](const std::string& l) { return permutation_character(g, s.get(l)); };
        auto chi = [&](int i) { return character_by_label(q, "chi" + std::to_string(i)); };
        auto w = [&](int l) {
            for (const auto& r : ri)
                if (r.label == "W" + std::to_string(l)) return r.character;
            fail(ErrorKind::Internal, "missing W" + std::to_string(l));
        };
        bool ids = true;
        for (int j = 2; j <= n - 1; ++j) {
            Character expect = chi(1) + chi(3);
            for (int l = j; l <= n - 2; ++l) expect = expect + w(l);
            ids = ids && rho("H" + std::to_string(j)) == expect;
        }
        for (int j = 2; j <= n - 2; ++j) {
            const std::string a = std::to_string(j), b = std::to_string(j + 1);
            ids = ids && rho("H" + a) == rho("H" + b) + w(j);
            ids = ids && rho("Ht" + a) == rho("Ht" + b) + w(j);
            ids = ids && rho("K" + a) == rho("K" + b) + 2 * w(j);
        }
        ids = ids && rho("1") == rho("Z") + w(1);
        ids = ids && rho("N1") == rho("G") + chi(2);
        ids = ids && rho("N2") == rho("G") + chi(3);
        ids = ids && rho("N3") == rho("G") + chi(4);
        c.require(ids, tag + "permutation character identities");
    }
}

void factor_table(Check& c) {
    std::mt19937 rng(20240611);
    for (int n = 3; n <= 5; ++n) {
        QuaternionGroup q(n);
        const std::string tag = "n=" + std::to_string(n) + ": ";
        for (int trial = 0; trial < 200; ++trial) {
            auto mv = random_mv(q, rng);
            auto t = factor_dimensions(q, mv);
            bool ok = dim_of(q, mv, "1") == mv.total_dimension() && t.dim_AG() == dim_of(q, mv, "G") &&
                      t.dim_prym_A_over_AZ() == mv.total_dimension() - dim_of(q, mv, "Z") &&
                      t.weighted_total() == mv.total_dimension();
            for (int i = 1; i <= 3; ++i)
                ok = ok && t.dim_prym_N(i) == dim_of(q, mv, "N" + std::to_string(i)) - dim_of(q, mv, "G");
            for (const auto& [j, d] : t.dim_prym_H()) {
                const std::string a = std::to_string(j), b = std::to_string(j + 1);
                ok = ok && d == dim_of(q, mv, "H" + a) - dim_of(q, mv, "H" + b) &&
                     d == dim_of(q, mv, "Ht" + a) - dim_of(q, mv, "Ht" + b) &&
                     2 * d == dim_of(q, mv, "K" + a) - dim_of(q, mv, "K" + b);
            }
            if (!ok) {
                c.require(false, tag + "table disagrees with inner products");
                break;
            }
        }
    }
    // ranks of averaged analytic matrices, n = 4
    QuaternionGroup q(4);
    std::mt19937 rng4(7);
    for (int trial = 0; trial < 12; ++trial) {
        auto mv = random_mv(q, rng4);
        if (mv.total_dimension() == 0 || mv.total_dimension() > 14) continue;
        for (const auto& k : q.group().all_subgroups()) {
            Matrix<Cyclotomic> p;
            for (auto e : k.elements()) {
                auto m = analytic_matrix(q, mv, e);
                if (p.rows() == 0) p = m;
                else p += m;
            }
            if (static_cast<long>(rank(p)) != dim_fixed_subvariety(q, mv, k)) {
                c.require(false, "averaging rank disagrees");
                return;
            }
        }
    }
}

void triviality(Check& c) {
    std::mt19937 rng(99);
    long tested = 0, trivial = 0;
    for (int n = 3; n <= 5; ++n) {
        QuaternionGroup q(n);
        for (int trial = 0; trial < 400; ++trial) {
            auto mv = random_mv(q, rng);
            if (trial % 3 == 0) {
                mv.a = {0, 0, 0, 0};
                for (auto& [s, v] : mv.b)
                    if (s % 2 == 0) v = 0;
            }
            auto r = is_trivial_decomposition(q, mv);
            c.require(r.agree(), "flags disagree at n=" + std::to_string(n));
            ++tested;
            trivial += r.flags()[0];
        }
    }
    c.notes << tested << " vectors, " << trivial << " trivial";
}

void genus_zero(Check& c) {
    for (int n = 3; n <= 4; ++n) {
        const std::string tag = "n=" + std::to_string(n) + ": ";
        QuaternionGroup q(n);
        for (int b = 0; b <= 4; ++b) {
            auto w = genus_zero_witness(q, b);
            c.require(validate_ske(w).valid && is_genus_zero_action(w), tag + "witness b=" + std::to_string(b));
            c.require(w.genus() == (1L << (n - 2)) * (b + 1), tag + "genus b=" + std::to_string(b));
        }
        for (const auto& e : genus_zero_actions(n, 4))
            c.require(e.witness_valid && e.all_genus_zero, tag + "sigma_b enumeration b=" + std::to_string(e.b));
        long rows = 0;
        for (const auto& r : genus_zero_census(n, 7, true)) {
            ++rows;
            const bool iff = r.is_sigma_b ? r.genus_zero_skes == r.skes : r.genus_zero_skes == 0;
            c.require(iff, tag + r.signature.to_string());
        }
        c.notes << (n == 3 ? "" : ", ") << tag << rows << " signatures";
    }
}

void census(Check& c) {
    auto fams = one_dimensional_families(4, true);
    const std::vector<std::tuple<std::string, Vec, int, long, int>> expect{
        {"F_{4,0}", {4}, 1, 7, 1},       {"F_{4,1}", {4, 4, 4, 4}, 0, 9, 1}, {"F_{4,2}", {8, 8, 4, 4}, 0, 11, 4},
        {"C_{4,2}", {8, 4, 4, 4}, 0, 10, 2}, {"C_{4,3}", {8, 2, 4, 4}, 0, 8, 1}};
    c.require(fams.size() == 5, "n=4 family count " + std::to_string(fams.size()));
    for (const auto& [name, periods, gamma, genus, bound] : expect) {
        auto it = std::find_if(fams.begin(), fams.end(), [&](const FamilyEntry& f) { return f.name == name; });
        if (it == fams.end()) {
            c.require(false, "missing " + name);
            continue;
        }
        c.require(it->signature.gamma == gamma && sorted_desc(it->signature.periods) == sorted_desc(periods), name + " signature");
        c.require(it->genus == genus, name + " genus");
        c.require(it->orbit_count && *it->orbit_count <= bound, name + " orbit count");
        if (bound == 1) c.require(it->orbit_count && *it->orbit_count == 1, name + " single stratum");
        if (it->orbit_count) c.notes << name << ":" << *it->orbit_count << " ";
    }
    c.require(one_dimensional_families(3, true).size() == 3, "n=3 family count");
}

void extensions(Check& c) {
    for (int n = 4; n <= 5; ++n) {
        auto cases = extension_cases(n);
        c.require(cases.size() == 4, "n=" + std::to_string(n) + " case count");
        for (const auto& e : cases) {
            auto r = check_extension(e.theta, e.theta_prime, e.words, e.restricted_signature);
            c.require(r.ok() && r.index == 2 && r.mu_ratio == Rational(2),
                      "n=" + std::to_string(n) + " " + e.family + " -> " + e.supergroup);
        }
    }
}

void quotient_tables(Check& c) {
    for (int n = 4; n <= 5; ++n) {
        QuaternionGroup q(n);
        const int h = 1 << (n - 2), m = 1 << (n - 1);
        const std::string tag = "n=" + std::to_string(n) + " ";

        auto f0 = family_ske(q, "F0");
        bool ok = sorted_desc(quot(q, f0, "Z").periods) == repeat(2, 4) && genus_of(q, f0, "Z") == h - 1;
        for (int j = 2; j <= n - 2; ++j) {
            auto d = quot(q, f0, "H" + std::to_string(j));
            ok = ok && d.periods == repeat(1 << (j - 1), 2) && d.genus == (1L << (n - j - 1));
        }
        for (const char* l : {"N1", "N2", "N3", "G"}) ok = ok && genus_of(q, f0, l) == 1;
        c.require(ok, tag + "F0 quotients");

        auto f1 = family_ske(q, "F1", 0);
        auto h2 = quot(q, f1, "H2");
        c.require(quot(q, f1, "Z").periods == repeat(2, 1 << n) && genus_of(q, f1, "Z") == 1 &&
                      sorted_desc(h2.periods) == concat({repeat(4, 4), repeat(2, m - 2)}) && h2.genus == 0 &&
                      genus_of(q, f1, "N1") == 1 && genus_of(q, f1, "N2") == 0 && genus_of(q, f1, "N3") == 0,
                  tag + "F1 quotients");

        auto f2 = family_ske(q, "F2", 0);
        ok = quot(q, f2, "Z").periods == repeat(2, m + 4) && genus_of(q, f2, "Z") == h - 1 &&
             sorted_desc(quot(q, f2, "N1").periods) == concat({repeat(m, 4), {2, 2}}) &&
             sorted_desc(quot(q, f2, "N3").periods) == concat({{h, h}, {2, 2}}) && genus_of(q, f2, "N3") == 1;
        for (int j = 2; j <= n - 1; ++j) {
            auto d = quot(q, f2, "H" + std::to_string(j));
            const int t = 1 << (j - 1);
            ok = ok && sorted_desc(d.periods) == sorted_desc(concat({{t, t}, repeat(4, 4), repeat(2, (1 << (n - j)) - 2)})) &&
                 d.genus == (1L << (n - j - 1)) - 1;
        }
        c.require(ok, tag + "F2 quotients");

        for (int k = 2; k <= n - 1; ++k) {
            auto cs = family_ske(q, "C", k);
            ok = quot(q, cs, "Z").periods == repeat(2, m + (1 << k) + 2) && genus_of(q, cs, "Z") == h - (1L << (k - 1));
            for (const char* l : {"N1", "N2", "N3"}) ok = ok && genus_of(q, cs, l) == 0;
            c.require(ok, tag + "C" + std::to_string(k) + " quotients");
        }

        for (const auto& s : {f0, f1, f2, family_ske(q, "C", 2), family_ske(q, "C", n - 1)}) {
            auto sol = multiplicities_from_quotient_genera(q, s);
            c.require(factor_dimensions(q, sol.mv).weighted_total() == s.genus(), tag + s.signature.to_string() + " total dimension");
        }
        auto t0 = factor_dimensions(q, multiplicities_from_quotient_genera(q, f0).mv);
        c.require(t0.dim_prym_A_over_AZ() == h, tag + "F0 Prym dimension");
        auto t1 = factor_dimensions(q, multiplicities_from_quotient_genera(q, f1).mv);
        c.require(t1.dim_prym_A_over_AZ() == m, tag + "F1 Prym dimension");
    }
    QuaternionGroup q3(3);
    c.require(family_ske(q3, "F0").genus() == 3 && family_ske(q3, "F1", 0).genus() == 5 && family_ske(q3, "C", 2).genus() == 4,
              "n=3 genera");
    auto c32 = family_ske(q3, "C", 2);
    c.require(genus_of(q3, c32, "Z") == 0 && genus_of(q3, family_ske(q3, "F1", 0), "Z") == 1, "n=3 Z-quotients");
    auto sol = multiplicities_from_quotient_genera(q3, c32);
    c.require(factor_dimensions(q3, sol.mv).weighted_total() == 4, "n=3 total dimension");
}

void genus_three(Check& c) {
    auto fx = load_fixture("g16_genus3");
    for (const auto& g : fx.generators) c.require(is_symplectic(g.matrix), g.name + " not symplectic");
    auto grp = verify_group_data(fx.generators, fx.target, fx.relators);
    c.require(grp.relations_hold(), "relations");
    c.require(grp.order == 16, "closure order " + std::to_string(grp.order));
    c.require(grp.isomorphic, "isomorphism type");
    int fixed = 0;
    for (const auto& f : fx.families) {
        const bool z = verify_fixed_family(fx.generators, f).all_zero();
        fixed += z;
        if (z) c.notes << "fixed: " << f.label << "; ";
    }
    c.require(fixed == 1, std::to_string(fixed) + " variants fixed");
    auto loc = fixed_locus_dimension(fx.generators);
    c.require(loc.dimension == 1 && loc.cross_validated, "locus dimension " + std::to_string(loc.dimension));
    c.notes << "locus dimension " << loc.dimension;
}

void genus_five(Check& c) {
    auto fx = load_fixture("g32_genus5");
    for (const auto& g : fx.generators) c.require(is_symplectic(g.matrix), g.name + " not symplectic");
    auto grp = verify_group_data(fx.generators, fx.target, fx.relators);
    c.require(grp.order == 32, "closure order " + std::to_string(grp.order));
    c.notes << "isomorphic to " << fx.target << ": " << (grp.isomorphic ? "yes" : "no") << "; ";
    for (const auto& f : fx.families) c.require(verify_fixed_family(fx.generators, f).all_zero(), f.label + " residual nonzero");
    auto loc = fixed_locus_dimension(fx.generators);
    c.require(loc.dimension == 2 && loc.cross_validated, "locus dimension " + std::to_string(loc.dimension));
    c.notes << "locus dimension " << loc.dimension;
}

void genus_four(Check& c) {
    auto fx = load_fixture("qd16_genus4");
    const IntMatrix& a = fx.generators.at(0).matrix;
    const IntMatrix& b = fx.generators.at(1).matrix;
    const IntMatrix id = IntMatrix::identity(a.rows());
    const IntMatrix a7 = power(a, 7);
    c.require(power(a, 16) == id, "A^16 != I");
    const bool b2 = power(b, 2) == id;
    c.require(b2, "B^2 != I");
    if (!b2 && power(b, 2) == IntMatrix(-1 * id)) c.notes << " (B^2 = -I)";
    const bool bab = b * a * b == a7;
    c.require(bab, "BAB != A^7");
    if (!bab && b * a * b == IntMatrix(-1 * a7)) c.notes << " (BAB = -A^7)";
    auto grp = verify_group_data(fx.generators, fx.target, fx.relators);
    c.require(grp.order == 32, "closure order " + std::to_string(grp.order));
    const ComplexMatrix z = fx.families.at(0).evaluate({});
    c.require(in_siegel_space(z), "Z0 not in H4");
    const double res = verify_fixed_point_numeric(fx.generators, z);
    c.require(res < 1e-9, "residual " + std::to_string(res));
    // the corrected generator pair
    const std::vector<NamedMatrix> fixed{{"A", a}, {"AB", a * b}};
    const bool corrected = power(a * b, 2) == id && (a * b) * a * (a * b) == a7 && verify_fixed_point_numeric(fixed, z) < 1e-9;
    char buf[64];
    std::snprintf(buf, sizeof buf, "; residual %.1e; A, AB satisfy the relations: %s", res, corrected ? "yes" : "no");
    c.notes << buf;
}

void curves(Check& c) {
    for (int n = 3; n <= 5; ++n) {
        const std::string tag = "n=" + std::to_string(n) + ": ";
        auto m = build_model(n, Cyclotomic(-1));
        c.require(m.f == Poly::var(0, (1 << n) + 1) - Poly::var(0), tag + "f at t = -1");
        c.require(first_map_exact(n), tag + "first map");
        for (Complex t : {Complex(-1, 0), Complex(2, 0), Complex(-0.3, 1.7)}) {
            auto rep = verify_automorphisms(build_model(n, t), 200, 17);
            c.require(rep.ok(1e-8) && rep.closure_order == (1 << n), tag + "automorphism relations");
        }
        QuaternionGroup q(n);
        c.require(m.genus() == family_ske(q, "C", n - 1).genus(), tag + "genus");
    }
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        std::string name;
        std::function<void(Check&)> run;
        double budget_seconds;
    };
    const std::vector<Criterion> criteria{
        {1, "character theory", characters, 5},
        {2, "factor dimension table", factor_table, 0},
        {3, "triviality conditions", triviality, 0},
        {4, "genus-zero actions", genus_zero, 120},
        {5, "one-dimensional family census", census, 300},
        {6, "extensions", extensions, 0},
        {7, "quotient genera and branch data", quotient_tables, 0},
        {8, "genus-three symplectic data", genus_three, 30},
        {9, "genus-five symplectic data", genus_five, 0},
        {10, "genus-four symplectic data", genus_four, 5},
        {11, "hyperelliptic model", curves, 0},
    };
    int failed = 0;
    for (const auto& cr : criteria) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.run(c);
        } catch (const std::exception& e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cr.budget_seconds > 0) c.require(secs < cr.budget_seconds, "over time budget");
        failed += !c.ok;
        char t[32];
        std::snprintf(t, sizeof t, "%.2fs", secs);
        std::cout << (c.ok ? "PASS" : "FAIL") << " [" << cr.id << "] " << cr.name << " (" << t << ")";
        const std::string notes = c.notes.str();
        if (!notes.empty()) std::cout << ": " << notes;
        std::cout << "\n";
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}
