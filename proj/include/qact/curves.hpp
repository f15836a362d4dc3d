#pragma once

// Hyperelliptic models Y^2 = X (X^N - 1)(X^N - t)(X^{2N} - t), N = 2^{n-2}, carrying the
// Q(2^n)-action x(X, Y) = (xi^2 X, xi Y), y(X, Y) = (lambda / X, eta t Y / X^{2N+1}).

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qact/cyclo.hpp"
#include "qact/poly.hpp"

namespace qact {

using Complex = std::complex<double>;

/// f in the variables X (index 0) and t (index 1).
Poly curve_polynomial(int n);

struct HyperellipticModel {
    int n = 0;
    Complex t;
    std::optional<Cyclotomic> t_exact;
    Poly f;           // in X only when t is exact, otherwise the numeric t is not substituted
    Complex xi;       // exp(2 pi i / 2^{n-1})
    Complex lambda;   // principal 2^{n-2}-th root of t
    Complex eta;      // principal square root of -lambda

    int N() const { return 1 << (n - 2); }
    int degree() const { return 4 * N() + 1; }
    /// (number of branch values - 2) / 2
    long genus() const { return 2L * N(); }
    Complex f_at(Complex x) const;
    /// Exact squarefreeness (gcd(f, f') constant); only available for exact t.
    bool squarefree() const;
};

/// Throws Error(InvalidParameter) for n < 3 or t in {0, 1}.
HyperellipticModel build_model(int n, const Cyclotomic& t);
HyperellipticModel build_model(int n, Complex t);

/// f(xi^2 X) = xi^2 f(X) as an identity in Q(zeta_{2^{n-1}})[X, t].
bool first_map_exact(int n);

struct CurvePoint {
    Complex x, y;
};

CurvePoint apply_x(const HyperellipticModel& m, CurvePoint p);
CurvePoint apply_y(const HyperellipticModel& m, CurvePoint p);
/// (X, Y) -> (zeta_{2^{n-1}} X, zeta_{2^n} Y), a square root of x; an automorphism only when t = -1.
CurvePoint apply_v(const HyperellipticModel& m, CurvePoint p);

struct AutomorphismReport {
    int samples = 0;
    double max_curve_residual = 0;             // relative, over both maps and all samples
    std::map<std::string, double> relations;   // relation -> max relative residual
    int closure_order = 0;                     // <x, y> as point maps
    std::optional<int> extended_closure_order; // <v, y>, t = -1 only
    bool first_map_exact = false;
    bool ok(double tol = 1e-8) const;
};

/// Samples random points (X, sqrt f(X)) and checks both maps and the Q(2^n) relations.
AutomorphismReport verify_automorphisms(const HyperellipticModel& m, int samples, unsigned seed = 1);

struct BranchOrbit {
    std::string label;  // "delta", "alpha", "alpha'", "beta", "gamma"
    std::vector<Complex> values;  // infinity is stored as an infinite real part
};

struct BranchConfiguration {
    std::vector<BranchOrbit> orbits;
    Complex lambda2, lambda3, lambda4;
    double max_root_residual = 0;       // |f| at the matched roots
    double lambda_relation_residual = 0; // |lambda4^N + lambda3^N|
    int count() const;
};

/// Roots of f (companion eigenvalues) plus infinity, matched against the orbits of z -> omega z.
/// Throws Error(Numeric) when a root cannot be matched.
BranchConfiguration branch_configuration(int n, Complex t);

}  // namespace qact
