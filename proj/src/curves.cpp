#include "qact/curves.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "qact/error.hpp"

namespace qact {

namespace {

Complex root_of_unity(long m, long k = 1) { return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / m); }

Complex principal_root(Complex z, int k) { return std::exp(std::log(z) / static_cast<double>(k)); }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

double rel(const CurvePoint& a, const CurvePoint& b) { return std::max(rel(a.x, b.x), rel(a.y, b.y)); }

void check_n(int n) {
    if (n < 3 || n > 12) fail(ErrorKind::InvalidParameter, "n must lie in 3..12");
}

HyperellipticModel base_model(int n, Complex t) {
    check_n(n);
    if (std::abs(t) < 1e-14 || std::abs(t - 1.0) < 1e-14) fail(ErrorKind::InvalidParameter, "t must avoid 0 and 1");
    HyperellipticModel m;
    m.n = n;
    m.t = t;
    m.xi = root_of_unity(1L << (n - 1));
    m.lambda = principal_root(t, 1 << (n - 2));
    m.eta = std::sqrt(-m.lambda);
    return m;
}

}  // namespace

Poly curve_polynomial(int n) {
    check_n(n);
    const int big = 1 << (n - 2);
    const Poly x = Poly::var(0), t = Poly::var(1);
    return x * (Poly::var(0, big) - Poly(1)) * (Poly::var(0, big) - t) * (Poly::var(0, 2 * big) - t);
}

Complex HyperellipticModel::f_at(Complex x) const {
    const Complex xn = std::pow(x, N());
    return x * (xn - 1.0) * (xn - t) * (xn * xn - t);
}

bool HyperellipticModel::squarefree() const {
    if (!t_exact) fail(ErrorKind::Unsupported, "squarefreeness is checked exactly and needs an exact t");
    return is_squarefree(f, 0);
}

HyperellipticModel build_model(int n, const Cyclotomic& t) {
    if (t.is_zero() || t == Cyclotomic(1)) fail(ErrorKind::InvalidParameter, "t must avoid 0 and 1");
    auto m = base_model(n, t.embed());
    m.t_exact = t;
    m.f = curve_polynomial(n).substitute(1, Poly(t));
    return m;
}

HyperellipticModel build_model(int n, Complex t) {
    auto m = base_model(n, t);
    m.f = curve_polynomial(n);
    return m;
}

bool first_map_exact(int n) {
    const Poly f = curve_polynomial(n);
    const Cyclotomic xi2 = Cyclotomic::zeta(1 << (n - 1), 2);
    return f.scale_var(0, xi2) == Poly(xi2) * f;
}

CurvePoint apply_x(const HyperellipticModel& m, CurvePoint p) { return {m.xi * m.xi * p.x, m.xi * p.y}; }

CurvePoint apply_y(const HyperellipticModel& m, CurvePoint p) {
    return {m.lambda / p.x, m.eta * m.t * p.y / std::pow(p.x, 2 * m.N() + 1)};
}

CurvePoint apply_v(const HyperellipticModel& m, CurvePoint p) {
    return {root_of_unity(1L << (m.n - 1)) * p.x, root_of_unity(1L << m.n) * p.y};
}

bool AutomorphismReport::ok(double tol) const {
    if (max_curve_residual >= tol || !first_map_exact) return false;
    for (const auto& [_, r] : relations)
        if (r >= tol) return false;
    return true;
}

namespace {

using PointMap = CurvePoint (*)(const HyperellipticModel&, CurvePoint);

/// Order of the group generated by point maps, elements told apart by their images of `base`.
int closure_order(const HyperellipticModel& m, const std::vector<CurvePoint>& base, const std::vector<PointMap>& gens,
                  int budget = 1024) {
    std::vector<std::vector<CurvePoint>> elems{base};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (auto g : gens) {
            std::vector<CurvePoint> img;
            for (const auto& p : elems[head]) img.push_back(g(m, p));
            bool seen = false;
            for (const auto& e : elems) {
                double d = 0;
                for (std::size_t k = 0; k < img.size(); ++k) d = std::max(d, rel(img[k], e[k]));
                if (d < 1e-7) {
                    seen = true;
                    break;
                }
            }
            if (seen) continue;
            if (static_cast<int>(elems.size()) >= budget) fail(ErrorKind::Resource, "point-map closure exceeds budget");
            elems.push_back(std::move(img));
        }
    }
    return static_cast<int>(elems.size());
}

}  // namespace

AutomorphismReport verify_automorphisms(const HyperellipticModel& m, int samples, unsigned seed) {
    if (samples < 1) fail(ErrorKind::InvalidParameter, "need at least one sample");
    AutomorphismReport rep;
    rep.samples = samples;
    rep.first_map_exact = first_map_exact(m.n);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.6, 1.6), angle(0, 2 * std::numbers::pi);
    std::vector<CurvePoint> pts;
    for (int s = 0; s < samples; ++s) {
        Complex x = std::polar(radius(rng), angle(rng));
        pts.push_back({x, std::sqrt(m.f_at(x))});
    }

    auto on_curve = [&](const CurvePoint& p) { return rel(p.y * p.y, m.f_at(p.x)); };
    auto power = [&](PointMap g, long k, CurvePoint p) {
        for (long i = 0; i < k; ++i) p = g(m, p);
        return p;
    };
    // y^{-1} = y^3 since y^4 = 1; x^{-1} = x^{2^{n-1} - 1}
    const long ox = 1L << (m.n - 1);
    auto& r = rep.relations;
    for (const auto* name : {"x^{2^{n-1}} = 1", "y^2 = x^{2^{n-2}}", "y x y^-1 = x^-1", "y^2 = (X, -Y)"}) r[name] = 0;
    for (const auto& p : pts) {
        rep.max_curve_residual = std::max({rep.max_curve_residual, on_curve(p), on_curve(apply_x(m, p)), on_curve(apply_y(m, p))});
        r["x^{2^{n-1}} = 1"] = std::max(r["x^{2^{n-1}} = 1"], rel(power(apply_x, ox, p), p));
        const CurvePoint yy = power(apply_y, 2, p);
        r["y^2 = x^{2^{n-2}}"] = std::max(r["y^2 = x^{2^{n-2}}"], rel(yy, power(apply_x, ox / 2, p)));
        r["y^2 = (X, -Y)"] = std::max(r["y^2 = (X, -Y)"], rel(yy, CurvePoint{p.x, -p.y}));
        const CurvePoint lhs = apply_y(m, apply_x(m, power(apply_y, 3, p)));
        r["y x y^-1 = x^-1"] = std::max(r["y x y^-1 = x^-1"], rel(lhs, power(apply_x, ox - 1, p)));
    }

    const std::vector<CurvePoint> base(pts.begin(), pts.begin() + std::min(samples, 6));
    rep.closure_order = closure_order(m, base, {apply_x, apply_y});
    if (std::abs(m.t + 1.0) < 1e-14) {
        const long ov = 1L << m.n;
        r["v on curve"] = 0;
        r["v^2 = x"] = 0;
        r["y v y^-1 = v^-1"] = 0;
        for (const auto& p : pts) {
            r["v on curve"] = std::max(r["v on curve"], on_curve(apply_v(m, p)));
            r["v^2 = x"] = std::max(r["v^2 = x"], rel(power(apply_v, 2, p), apply_x(m, p)));
            const CurvePoint lhs = apply_y(m, apply_v(m, power(apply_y, 3, p)));
            r["y v y^-1 = v^-1"] = std::max(r["y v y^-1 = v^-1"], rel(lhs, power(apply_v, ov - 1, p)));
        }
        rep.extended_closure_order = closure_order(m, base, {apply_v, apply_y});
    }
    return rep;
}

// ---- branch values -----------------------------------------------------------------

int BranchConfiguration::count() const {
    int c = 0;
    for (const auto& o : orbits) c += static_cast<int>(o.values.size());
    return c;
}

BranchConfiguration branch_configuration(int n, Complex t) {
    auto m = build_model(n, t);
    const int big = m.N();
    const int d = m.degree();
    // monic coefficients, lowest first
    std::vector<Complex> c{0.0, 1.0};
    auto mul = [&](const std::vector<Complex>& b) {
        std::vector<Complex> out(c.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += c[i] * b[j];
        c = out;
    };
    auto binom = [](int k, Complex c0) {
        std::vector<Complex> v(k + 1, 0.0);
        v[0] = -c0;
        v[k] = 1.0;
        return v;
    };
    mul(binom(big, 1.0));
    mul(binom(big, t));
    mul(binom(2 * big, t));

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[i];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::Numeric, "eigenvalue iteration failed");
    std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + d);
    for (auto& z : roots) {
        // a couple of Newton steps on f
        for (int it = 0; it < 3; ++it) {
            Complex fv = 0, dv = 0;
            for (int k = d; k >= 0; --k) {
                dv = dv * z + fv;
                fv = fv * z + c[k];
            }
            if (std::abs(dv) > 1e-300) z -= fv / dv;
        }
    }

    BranchConfiguration bc;
    bc.lambda2 = m.lambda;
    const Complex s = std::sqrt(t);
    bc.lambda3 = principal_root(s, big);
    bc.lambda4 = principal_root(-s, big);
    bc.lambda_relation_residual = std::abs(std::pow(bc.lambda4, big) + std::pow(bc.lambda3, big));

    std::vector<bool> used(roots.size(), false);
    auto take = [&](Complex v) {
        std::size_t best = roots.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < roots.size(); ++k)
            if (!used[k] && std::abs(roots[k] - v) < bd) {
                bd = std::abs(roots[k] - v);
                best = k;
            }
        if (best == roots.size() || bd > 1e-6 * std::max(1.0, std::abs(v)))
            fail(ErrorKind::Numeric, "root near " + std::to_string(v.real()) + "+" + std::to_string(v.imag()) + "i not found");
        used[best] = true;
        bc.max_root_residual = std::max(bc.max_root_residual, std::abs(m.f_at(roots[best])));
        return roots[best];
    };
    const Complex omega = root_of_unity(big);
    BranchOrbit delta{"delta", {take(0.0), Complex(std::numeric_limits<double>::infinity(), 0)}};
    bc.orbits.push_back(delta);
    const std::vector<std::pair<std::string, Complex>> scales{
        {"alpha", 1.0}, {"alpha'", bc.lambda2}, {"beta", bc.lambda3}, {"gamma", bc.lambda4}};
    for (const auto& [label, scale] : scales) {
        BranchOrbit o{label, {}};
        for (int j = 1; j <= big; ++j) o.values.push_back(take(scale * std::pow(omega, j)));
        bc.orbits.push_back(std::move(o));
    }
    return bc;
}

}  // namespace qact
