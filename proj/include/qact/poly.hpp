#pragma once

// Sparse multivariate polynomials with cyclotomic coefficients. Variables are
// positional; names only matter for parsing and printing.

#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qact/cyclo.hpp"
#include "qact/dense_matrix.hpp"

namespace qact {

class Poly {
public:
    using Monomial = std::vector<int>;  // exponent per variable, trailing zeros trimmed

    Poly() = default;
    Poly(long v);  // NOLINT(google-explicit-constructor)
    Poly(const Cyclotomic& c);  // NOLINT(google-explicit-constructor)
    static Poly var(int index, int power = 1);
    static Poly term(Monomial m, const Cyclotomic& c);

    const std::map<Monomial, Cyclotomic>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    Cyclotomic constant_term() const;
    Cyclotomic coefficient(const Monomial& m) const;

    int num_vars() const;
    int degree(int var) const;
    int total_degree() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r = a;
        return r *= b;
    }
    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int k) const;
    Poly derivative(int var) const;
    Poly substitute(int var, const Poly& value) const;
    /// p(..., c * x_var, ...)
    Poly scale_var(int var, const Cyclotomic& c) const;
    Poly galois(long t) const;

    Cyclotomic evaluate(const std::vector<Cyclotomic>& point) const;
    std::complex<double> evaluate(const std::vector<std::complex<double>>& point) const;

    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    void add_term(const Monomial& m, const Cyclotomic& c);
    std::map<Monomial, Cyclotomic> t_;
};

/// Parses "1 + (i-1)/2*t", "t1^2 - 3*t2", "-i*t". Identifiers are looked up in var_names;
/// "i" is the imaginary unit and "zN" is exp(2 pi i / N) unless shadowed by a variable.
Poly parse_poly(std::string_view text, const std::vector<std::string>& var_names);

using PolyMatrix = Matrix<Poly>;

/// True iff every entry is exactly the zero polynomial.
bool poly_matrix_identity_zero(const PolyMatrix& m);

// ---- univariate helpers ----------------------------------------------------

/// Coefficients c_0..c_d of a polynomial that only involves `var`.
std::vector<Cyclotomic> univariate_coeffs(const Poly& p, int var);
Poly from_univariate(const std::vector<Cyclotomic>& coeffs, int var);
/// Monic gcd of univariate coefficient vectors.
std::vector<Cyclotomic> univariate_gcd(std::vector<Cyclotomic> a, std::vector<Cyclotomic> b);
/// gcd(p, p') is constant.
bool is_squarefree(const Poly& p, int var);

}  // namespace qact
