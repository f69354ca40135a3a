// Base-d words, least significant digit first.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace autostab {

using BigInt = boost::multiprecision::cpp_int;
using Letter = std::vector<BigInt>;   // an m-tuple of integers
using Tuple = std::vector<BigInt>;

struct Base {
    int d;
    explicit Base(int d_) : d(d_) {
        if (d < 2) throw std::invalid_argument("base must be >= 2");
    }
};

struct Word {
    int d = 2;
    int dim = 1;
    std::vector<Letter> letters;

    Word() = default;
    Word(int d_, int dim_) : d(d_), dim(dim_) {}
    Word(int d_, int dim_, std::vector<Letter> ls);

    size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }
    const Letter& operator[](size_t i) const { return letters[i]; }
    void push(Letter l);
    bool operator==(const Word& o) const {
        return d == o.d && dim == o.dim && letters == o.letters;
    }
    bool operator<(const Word& o) const { return letters < o.letters; }
};

BigInt ipow(const BigInt& b, size_t e);
BigInt dpow(int d, size_t e);

// floor division / mod with nonnegative remainder
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt pos_mod(const BigInt& a, const BigInt& b);
long long pos_mod(long long a, long long b);

Tuple evaluate(const Word& w);
BigInt value(const Word& w);   // dim 1 shortcut

Word canonical_rep(const Tuple& a, int d);
Word canonical_rep(const BigInt& a, int d);

Word concat(const Word& u, const Word& v);
Word power(const Word& s, size_t n);
Word shift(const Word& s, size_t i);
Word zeros(int d, int dim, size_t n);

// The unique length-K nonnegative-digit word for [s]+[t], if it exists.
std::optional<Word> add_fixed_length(const Word& s, const Word& t, size_t K);
// Length-K nonnegative digits of v, or nothing when v is outside [0, d^K).
std::optional<Word> digits_fixed(const BigInt& v, int d, size_t K);

// dim-1 helpers
Word word1(int d, const std::vector<long long>& digits);
Letter letter1(const BigInt& x);

bool standard_signed(const Letter& l, int d);
bool standard_nonneg(const Letter& l, int d);

// "(−3,2) (−2,3) (0,4)" or, for dim 1, "1 0 2" / "102" digit strings
Word parse_word(std::string_view text, int d);
std::string format_word(const Word& w);
std::string format_letter(const Letter& l);
std::string format_tuple(const Tuple& t);

}  // namespace autostab
