#pragma once

// Exact elements of Q(zeta_m) for m a power of two. Stored as coefficients of
// 1, zeta, ..., zeta^{m/2-1} modulo zeta^{m/2} + 1 and kept at the smallest conductor.

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

namespace qact {

using Rational = mpq_class;

Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& q);

class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(long v);  // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& q);  // NOLINT(google-explicit-constructor)
    /// m must be a power of two >= 1; coeffs.size() must be max(m/2, 1).
    Cyclotomic(int m, std::vector<Rational> coeffs);

    /// zeta_m^k
    static Cyclotomic zeta(int m, long k = 1);
    static Cyclotomic i() { return zeta(4); }

    int conductor() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }
    /// Coefficient vector with respect to conductor m (a multiple of conductor()).
    std::vector<Rational> coeffs_at(int m) const;

    bool is_zero() const;
    bool is_rational() const { return m_ <= 2; }
    Rational to_rational() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    Cyclotomic inverse() const;
    Cyclotomic pow(long k) const;
    /// zeta -> zeta^t; t must be odd.
    Cyclotomic galois(long t) const;
    Cyclotomic conj() const { return galois(-1); }
    std::complex<double> embed() const;

    std::string to_string() const;

private:
    void normalize();

    int m_ = 1;
    std::vector<Rational> c_;
};

Cyclotomic galois_apply(const Cyclotomic& a, long t);

}  // namespace qact
