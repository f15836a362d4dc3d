#include "qact/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qact/error.hpp"

namespace qact {

namespace {

void trim(Poly::Monomial& m) {
    while (!m.empty() && m.back() == 0) m.pop_back();
}

Poly::Monomial mono_mul(const Poly::Monomial& a, const Poly::Monomial& b) {
    Poly::Monomial r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

void strip(std::vector<Cyclotomic>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

}  // namespace

Poly::Poly(long v) {
    if (v != 0) t_[{}] = Cyclotomic(v);
}

Poly::Poly(const Cyclotomic& c) {
    if (!c.is_zero()) t_[{}] = c;
}

Poly Poly::var(int index, int power) {
    Monomial m(index + 1, 0);
    m[index] = power;
    trim(m);
    return term(m, Cyclotomic(1));
}

Poly Poly::term(Monomial m, const Cyclotomic& c) {
    trim(m);
    Poly p;
    if (!c.is_zero()) p.t_[m] = c;
    return p;
}

void Poly::add_term(const Monomial& m, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.empty()); }

Cyclotomic Poly::constant_term() const { return coefficient({}); }

Cyclotomic Poly::coefficient(const Monomial& m) const {
    Monomial k = m;
    trim(k);
    auto it = t_.find(k);
    return it == t_.end() ? Cyclotomic(0) : it->second;
}

int Poly::num_vars() const {
    std::size_t n = 0;
    for (const auto& [m, _] : t_) n = std::max(n, m.size());
    return static_cast<int>(n);
}

int Poly::degree(int var) const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [m, _] : t_)
        if (static_cast<int>(m.size()) > var) d = std::max(d, m[var]);
    return d;
}

int Poly::total_degree() const {
    int d = t_.empty() ? -1 : 0;
    for (const auto& [m, _] : t_) {
        int s = 0;
        for (int e : m) s += e;
        d = std::max(d, s);
    }
    return d;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& [_, c] : r.t_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly& Poly::operator*=(const Poly& o) {
    Poly r;
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_) r.add_term(mono_mul(ma, mb), ca * cb);
    *this = std::move(r);
    return *this;
}

Poly Poly::pow(int k) const {
    if (k < 0) fail(ErrorKind::InvalidParameter, "negative polynomial power");
    Poly r(1), base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k > 0) base *= base;
    }
    return r;
}

Poly Poly::derivative(int var) const {
    Poly r;
    for (const auto& [m, c] : t_) {
        if (static_cast<int>(m.size()) <= var || m[var] == 0) continue;
        Monomial k = m;
        Cyclotomic f = c * Cyclotomic(static_cast<long>(k[var]));
        --k[var];
        trim(k);
        r.add_term(k, f);
    }
    return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
    Poly r;
    std::map<int, Poly> powers;
    for (const auto& [m, c] : t_) {
        int e = static_cast<int>(m.size()) > var ? m[var] : 0;
        Monomial k = m;
        if (e > 0) k[var] = 0;
        trim(k);
        Poly rest = term(k, c);
        if (e > 0) {
            auto it = powers.find(e);
            if (it == powers.end()) it = powers.emplace(e, value.pow(e)).first;
            rest *= it->second;
        }
        r += rest;
    }
    return r;
}

Poly Poly::scale_var(int var, const Cyclotomic& c) const {
    Poly r;
    for (const auto& [m, v] : t_) {
        int e = static_cast<int>(m.size()) > var ? m[var] : 0;
        r.add_term(m, v * c.pow(e));
    }
    return r;
}

Poly Poly::galois(long t) const {
    Poly r;
    for (const auto& [m, c] : t_) r.add_term(m, c.galois(t));
    return r;
}

Cyclotomic Poly::evaluate(const std::vector<Cyclotomic>& point) const {
    Cyclotomic s(0);
    for (const auto& [m, c] : t_) {
        Cyclotomic v = c;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= point.size()) fail(ErrorKind::InvalidParameter, "evaluation point has too few coordinates");
            v *= point[i].pow(m[i]);
        }
        s += v;
    }
    return s;
}

std::complex<double> Poly::evaluate(const std::vector<std::complex<double>>& point) const {
    std::complex<double> s = 0;
    for (const auto& [m, c] : t_) {
        std::complex<double> v = c.embed();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (i >= point.size()) fail(ErrorKind::InvalidParameter, "evaluation point has too few coordinates");
            v *= std::pow(point[i], m[i]);
        }
        s += v;
    }
    return s;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        std::string cs = c.to_string();
        bool simple = c.is_rational() || cs.find(' ') == std::string::npos;
        std::string mono;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += i < names.size() ? names[i] : "v" + std::to_string(i);
            if (m[i] != 1) mono += "^" + std::to_string(m[i]);
        }
        if (mono.empty()) {
            os << (simple ? cs : "(" + cs + ")");
        } else if (c == Cyclotomic(1)) {
            os << mono;
        } else {
            os << (simple ? cs : "(" + cs + ")") << "*" << mono;
        }
    }
    return os.str();
}

// ---- parser ----------------------------------------------------------------

namespace {

class PolyParser {
public:
    PolyParser(std::string_view s, const std::vector<std::string>& names) : s_(s), names_(names) {}

    Poly parse() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) error("unexpected character");
        return p;
    }

private:
    [[noreturn]] void error(const std::string& what) {
        fail(ErrorKind::InvalidParameter, "polynomial '" + std::string(s_) + "': " + what + " at " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool starts_base() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isalnum(static_cast<unsigned char>(c)) || c == '(';
    }

    Poly expr() {
        Poly p = term();
        for (;;) {
            if (accept('+'))
                p += term();
            else if (accept('-'))
                p -= term();
            else
                return p;
        }
    }

    Poly term() {
        Poly p = unary();
        for (;;) {
            if (accept('*')) {
                p *= unary();
            } else if (accept('/')) {
                Poly d = unary();
                if (!d.is_constant() || d.is_zero()) error("division by a non-constant or zero");
                p *= Poly(d.constant_term().inverse());
            } else if (starts_base()) {
                p *= power();
            } else {
                return p;
            }
        }
    }

    Poly unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    Poly power() {
        Poly b = base();
        if (accept('^')) {
            skip();
            bool paren = accept('(');
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) error("expected exponent");
            int e = std::stoi(std::string(s_.substr(start, pos_ - start)));
            if (paren && !accept(')')) error("expected ')'");
            b = b.pow(e);
        }
        return b;
    }

    Poly base() {
        skip();
        if (pos_ >= s_.size()) error("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!accept(')')) error("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Poly(Cyclotomic(parse_rational(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string id(s_.substr(start, pos_ - start));
            for (std::size_t k = 0; k < names_.size(); ++k)
                if (names_[k] == id) return Poly::var(static_cast<int>(k));
            if (id == "i") return Poly(Cyclotomic::i());
            if (id.size() > 1 && id[0] == 'z' &&
                std::all_of(id.begin() + 1, id.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                return Poly(Cyclotomic::zeta(std::stoi(id.substr(1))));
            error("unknown identifier '" + id + "'");
        }
        error("unexpected character");
    }

    std::string_view s_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const std::vector<std::string>& var_names) {
    return PolyParser(text, var_names).parse();
}

bool poly_matrix_identity_zero(const PolyMatrix& m) { return m.is_zero(); }

// ---- univariate ------------------------------------------------------------

std::vector<Cyclotomic> univariate_coeffs(const Poly& p, int var) {
    std::vector<Cyclotomic> out;
    for (const auto& [m, c] : p.terms()) {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (static_cast<int>(i) != var && m[i] != 0) fail(ErrorKind::InvalidParameter, "polynomial is not univariate");
        int e = static_cast<int>(m.size()) > var ? m[var] : 0;
        if (static_cast<int>(out.size()) <= e) out.resize(e + 1, Cyclotomic(0));
        out[e] += c;
    }
    return out;
}

Poly from_univariate(const std::vector<Cyclotomic>& coeffs, int var) {
    Poly p;
    for (std::size_t e = 0; e < coeffs.size(); ++e) p += Poly::var(var, static_cast<int>(e)) * Poly(coeffs[e]);
    return p;
}

std::vector<Cyclotomic> univariate_gcd(std::vector<Cyclotomic> a, std::vector<Cyclotomic> b) {
    strip(a);
    strip(b);
    while (!b.empty()) {
        // a mod b
        Cyclotomic lead_inv = b.back().inverse();
        while (a.size() >= b.size() && !a.empty()) {
            Cyclotomic f = a.back() * lead_inv;
            std::size_t shift = a.size() - b.size();
            for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
            a.pop_back();
            strip(a);
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        Cyclotomic inv = a.back().inverse();
        for (auto& c : a) c *= inv;
    }
    return a;
}

bool is_squarefree(const Poly& p, int var) {
    auto c = univariate_coeffs(p, var);
    auto d = univariate_coeffs(p.derivative(var), var);
    return univariate_gcd(c, d).size() == 1;
}

}  // namespace qact
