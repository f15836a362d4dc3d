#include "qact/words.hpp"

#include <cctype>

#include "qact/error.hpp"

namespace qact {
namespace {

class WordParser {
public:
    explicit WordParser(std::string_view s) : s_(s) {}

    Word parse() {
        Word w = parse_product();
        skip_ws();
        if (pos_ != s_.size()) bad("unexpected character");
        return w;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void bad(const std::string& why) const {
        fail(ErrorKind::InvalidParameter,
             "cannot parse word '" + std::string(s_) + "' at " + std::to_string(pos_) + ": " + why);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool at_factor_start() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '1';
    }

    Word parse_product() {
        Word w;
        while (true) {
            if (!at_factor_start()) break;
            if (s_[pos_] == '1') {
                // identity literal; must not be followed by further digits
                ++pos_;
                if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) bad("bare integer");
                parse_exponent();
            } else {
                w.push_back(parse_factor());
            }
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                if (!at_factor_start()) bad("dangling '*'");
            }
        }
        return w;
    }

    long parse_exponent() {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
        ++pos_;
        skip_ws();
        bool paren = false;
        if (pos_ < s_.size() && s_[pos_] == '(') {
            paren = true;
            ++pos_;
        }
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) bad("expected exponent");
        long e = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            e = e * 10 + (s_[pos_] - '0');
            ++pos_;
        }
        if (paren) {
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') bad("expected ')'");
            ++pos_;
        }
        return neg ? -e : e;
    }

    WordFactor parse_factor() {
        WordFactor f;
        if (s_[pos_] == '(') {
            ++pos_;
            f.subword = parse_product();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') bad("expected ')'");
            ++pos_;
        } else {
            f.symbol.push_back(s_[pos_++]);
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) f.symbol.push_back(s_[pos_++]);
        }
        f.exponent = parse_exponent();
        return f;
    }
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += "*";
        const auto& f = w[i];
        out += f.symbol.empty() ? "(" + format_word(f.subword) + ")" : f.symbol;
        if (f.exponent != 1) out += "^" + std::to_string(f.exponent);
    }
    return out;
}

}  // namespace qact
