#pragma once

// Words over named generators, e.g. "x^3*y*z", "x^-1y", "(y1*y2)*y3*(y1*y2)^-1".
// A symbol is a letter followed by optional digits; juxtaposition multiplies.

#include <string>
#include <string_view>
#include <vector>

namespace qact {

struct WordFactor {
    std::string symbol;               // empty when this factor is a parenthesised sub-word
    std::vector<WordFactor> subword;  // used when symbol is empty
    long exponent = 1;
};

using Word = std::vector<WordFactor>;

/// Parses a word; "1" and "" denote the identity. Throws Error(InvalidParameter) on bad syntax.
Word parse_word(std::string_view text);

std::string format_word(const Word& w);

/// Evaluates a word in any group-like structure. `ops` must provide
/// identity(), mul(a, b), inv(a) and lookup(symbol).
template <class Ops>
auto evaluate_word(const Word& w, const Ops& ops) -> decltype(ops.identity()) {
    using T = decltype(ops.identity());
    T acc = ops.identity();
    for (const auto& f : w) {
        T base = f.symbol.empty() ? evaluate_word(f.subword, ops) : ops.lookup(f.symbol);
        long e = f.exponent;
        if (e < 0) {
            base = ops.inv(base);
            e = -e;
        }
        T p = ops.identity();
        // square-and-multiply keeps large exponents (u^16, c^-7) cheap
        while (e > 0) {
            if (e & 1) p = ops.mul(p, base);
            e >>= 1;
            if (e > 0) base = ops.mul(base, base);
        }
        acc = ops.mul(acc, p);
    }
    return acc;
}

}  // namespace qact
