#include "qact/cyclo.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qact/error.hpp"

namespace qact {

namespace {

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

Rational parse_rational(const std::string& s) {
    Rational q;
    try {
        std::string t = s;
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        q.set_str(t, 10);
    } catch (const std::invalid_argument&) {
        fail(ErrorKind::InvalidParameter, "bad rational '" + s + "'");
    }
    if (q.get_den() == 0) fail(ErrorKind::Arithmetic, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Cyclotomic::Cyclotomic() : m_(2), c_(1) {}

Cyclotomic::Cyclotomic(long v) : m_(2), c_{Rational(v)} {}

Cyclotomic::Cyclotomic(const Rational& q) : m_(2), c_{q} { c_[0].canonicalize(); }

Cyclotomic::Cyclotomic(int m, std::vector<Rational> coeffs) : m_(m < 2 ? 2 : m), c_(std::move(coeffs)) {
    if (!is_pow2(m)) fail(ErrorKind::InvalidParameter, "conductor must be a power of two");
    if (static_cast<int>(c_.size()) != m_ / 2) fail(ErrorKind::InvalidParameter, "coefficient count must be m/2");
    for (auto& v : c_) {
        if (v.get_den() == 0) fail(ErrorKind::Arithmetic, "zero denominator");
        v.canonicalize();
    }
    normalize();
}

Cyclotomic Cyclotomic::zeta(int m, long k) {
    if (!is_pow2(m)) fail(ErrorKind::InvalidParameter, "conductor must be a power of two");
    if (m <= 2) return Cyclotomic((m == 2 && (k % 2 != 0)) ? -1 : 1);
    long r = ((k % m) + m) % m;
    std::vector<Rational> c(m / 2);
    if (r < m / 2)
        c[r] = 1;
    else
        c[r - m / 2] = -1;
    return Cyclotomic(m, std::move(c));
}

void Cyclotomic::normalize() {
    while (m_ > 2) {
        bool odd_zero = true;
        for (std::size_t j = 1; j < c_.size(); j += 2)
            if (c_[j] != 0) {
                odd_zero = false;
                break;
            }
        if (!odd_zero) break;
        std::vector<Rational> h(c_.size() / 2);
        for (std::size_t j = 0; j < h.size(); ++j) h[j] = c_[2 * j];
        c_ = std::move(h);
        m_ /= 2;
    }
}

std::vector<Rational> Cyclotomic::coeffs_at(int m) const {
    if (m < 2) m = 2;
    if (!is_pow2(m) || m % m_ != 0) fail(ErrorKind::InvalidParameter, "cannot express element at a smaller conductor");
    std::vector<Rational> out(m / 2);
    const int step = m / m_;
    for (std::size_t j = 0; j < c_.size(); ++j) out[j * step] = c_[j];
    return out;
}

bool Cyclotomic::is_zero() const { return m_ == 2 && c_[0] == 0; }

Rational Cyclotomic::to_rational() const {
    if (!is_rational()) fail(ErrorKind::InvalidParameter, "element is not rational: " + to_string());
    return c_[0];
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    const int m = std::max(m_, o.m_);
    auto a = coeffs_at(m);
    auto b = o.coeffs_at(m);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j];
    m_ = m;
    c_ = std::move(a);
    normalize();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    const int m = std::max(m_, o.m_);
    const int l = m / 2;
    auto a = coeffs_at(m);
    auto b = o.coeffs_at(m);
    std::vector<Rational> r(l);
    for (int i = 0; i < l; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < l; ++j) {
            if (b[j] == 0) continue;
            int k = i + j;
            if (k >= l)
                r[k - l] -= a[i] * b[j];
            else
                r[k] += a[i] * b[j];
        }
    }
    m_ = m;
    c_ = std::move(r);
    normalize();
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) fail(ErrorKind::Arithmetic, "division by zero");
    if (is_rational()) return Cyclotomic(Rational(1) / c_[0]);
    // sigma: zeta -> -zeta; a * sigma(a) lies in the subfield of half the conductor
    Cyclotomic s = galois(1 + m_ / 2);
    Cyclotomic n = *this * s;
    return s * n.inverse();
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.m_ == b.m_ && a.c_ == b.c_; }

Cyclotomic Cyclotomic::pow(long k) const {
    Cyclotomic base = k < 0 ? inverse() : *this;
    if (k < 0) k = -k;
    Cyclotomic r(1);
    while (k > 0) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return r;
}

Cyclotomic Cyclotomic::galois(long t) const {
    if (t % 2 == 0) fail(ErrorKind::InvalidParameter, "Galois exponent must be odd");
    if (m_ <= 2) return *this;
    const long m = m_;
    std::vector<Rational> r(m_ / 2);
    for (long j = 0; j < m / 2; ++j) {
        if (c_[j] == 0) continue;
        long k = (((t % m) + m) % m * j) % m;
        if (k < m / 2)
            r[k] += c_[j];
        else
            r[k - m / 2] -= c_[j];
    }
    return Cyclotomic(m_, std::move(r));
}

std::complex<double> Cyclotomic::embed() const {
    std::complex<double> z = 0;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        double ang = 2.0 * std::numbers::pi * static_cast<double>(j) / m_;
        z += c_[j].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return z;
}

std::string Cyclotomic::to_string() const {
    if (is_rational()) return rational_to_string(c_[0]);
    const std::string unit = m_ == 4 ? "i" : "z" + std::to_string(m_);
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == 0) continue;
        Rational v = c_[j];
        bool neg = v < 0;
        if (neg) v = -v;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (j == 0) {
            os << v.get_str();
            continue;
        }
        if (v != 1) os << v.get_str() << "*";
        os << unit;
        if (j > 1) os << "^" << j;
    }
    return os.str();
}

Cyclotomic galois_apply(const Cyclotomic& a, long t) { return a.galois(t); }

}  // namespace qact
