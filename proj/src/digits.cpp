#include "autostab/digits.hpp"

#include <cctype>
#include <sstream>

namespace autostab {

Word::Word(int d_, int dim_, std::vector<Letter> ls) : d(d_), dim(dim_), letters(std::move(ls)) {
    for (auto& l : letters)
        if ((int)l.size() != dim) throw std::invalid_argument("letter dimension mismatch");
}

void Word::push(Letter l) {
    if ((int)l.size() != dim) throw std::invalid_argument("letter dimension mismatch");
    letters.push_back(std::move(l));
}

BigInt ipow(const BigInt& b, size_t e) {
    BigInt r = 1, x = b;
    while (e) {
        if (e & 1) r *= x;
        e >>= 1;
        if (e) x *= x;
    }
    return r;
}

BigInt dpow(int d, size_t e) { return ipow(BigInt(d), e); }

BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;   // truncates toward zero
    BigInt r = a - q * b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

BigInt pos_mod(const BigInt& a, const BigInt& b) {
    BigInt r = a % b;
    if (r < 0) r += (b < 0 ? -b : b);
    return r;
}

long long pos_mod(long long a, long long b) {
    long long r = a % b;
    return r < 0 ? r + b : r;
}

Tuple evaluate(const Word& w) {
    Tuple acc(w.dim, BigInt(0));
    // Horner from the most significant end
    for (size_t i = w.letters.size(); i-- > 0;)
        for (int k = 0; k < w.dim; ++k) acc[k] = acc[k] * w.d + w.letters[i][k];
    return acc;
}

BigInt value(const Word& w) {
    if (w.dim != 1) throw std::invalid_argument("value(): dimension must be 1");
    BigInt acc = 0;
    for (size_t i = w.letters.size(); i-- > 0;) acc = acc * w.d + w.letters[i][0];
    return acc;
}

Word canonical_rep(const Tuple& a, int d) {
    (void)Base{d};
    int m = (int)a.size();
    std::vector<std::vector<BigInt>> comps(m);
    size_t len = 0;
    for (int k = 0; k < m; ++k) {
        BigInt x = a[k] < 0 ? BigInt(-a[k]) : a[k];
        int sgn = a[k] < 0 ? -1 : 1;
        while (x != 0) {
            BigInt q, r;
            boost::multiprecision::divide_qr(x, BigInt(d), q, r);
            comps[k].push_back(sgn * r);
            x = q;
        }
        len = std::max(len, comps[k].size());
    }
    Word w(d, m);
    w.letters.assign(len, Letter(m, BigInt(0)));
    for (int k = 0; k < m; ++k)
        for (size_t i = 0; i < comps[k].size(); ++i) w.letters[i][k] = comps[k][i];
    return w;
}

Word canonical_rep(const BigInt& a, int d) { return canonical_rep(Tuple{a}, d); }

static void check_compat(const Word& u, const Word& v) {
    if (u.d != v.d || u.dim != v.dim) throw std::invalid_argument("base/dimension mismatch");
}

Word concat(const Word& u, const Word& v) {
    check_compat(u, v);
    Word r = u;
    r.letters.insert(r.letters.end(), v.letters.begin(), v.letters.end());
    return r;
}

Word power(const Word& s, size_t n) {
    Word r(s.d, s.dim);
    r.letters.reserve(s.size() * n);
    for (size_t i = 0; i < n; ++i) r.letters.insert(r.letters.end(), s.letters.begin(), s.letters.end());
    return r;
}

Word shift(const Word& s, size_t i) {
    BigInt f = dpow(s.d, i);
    Word r = s;
    for (auto& l : r.letters)
        for (auto& x : l) x *= f;
    return r;
}

Word zeros(int d, int dim, size_t n) {
    Word r(d, dim);
    r.letters.assign(n, Letter(dim, BigInt(0)));
    return r;
}

std::optional<Word> digits_fixed(const BigInt& v, int d, size_t K) {
    if (v < 0) return std::nullopt;
    Word r(d, 1);
    BigInt x = v;
    for (size_t i = 0; i < K; ++i) {
        BigInt q, rem;
        boost::multiprecision::divide_qr(x, BigInt(d), q, rem);
        r.letters.push_back(Letter{rem});
        x = q;
    }
    if (x != 0) return std::nullopt;
    return r;
}

std::optional<Word> add_fixed_length(const Word& s, const Word& t, size_t K) {
    check_compat(s, t);
    if (s.dim != 1) throw std::invalid_argument("add_fixed_length: dimension must be 1");
    return digits_fixed(value(s) + value(t), s.d, K);
}

Word word1(int d, const std::vector<long long>& digits) {
    Word w(d, 1);
    for (long long x : digits) w.letters.push_back(Letter{BigInt(x)});
    return w;
}

Letter letter1(const BigInt& x) { return Letter{x}; }

bool standard_signed(const Letter& l, int d) {
    for (auto& x : l)
        if (x <= -d || x >= d) return false;
    return true;
}

bool standard_nonneg(const Letter& l, int d) {
    for (auto& x : l)
        if (x < 0 || x >= d) return false;
    return true;
}

namespace {

BigInt parse_int(std::string_view s) {
    size_t i = 0;
    while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    size_t j = s.size();
    while (j > i && std::isspace((unsigned char)s[j - 1])) --j;
    s = s.substr(i, j - i);
    if (s.empty()) throw std::invalid_argument("empty integer in word literal");
    bool neg = false;
    size_t k = 0;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        k = 1;
    }
    if (k >= s.size()) throw std::invalid_argument("bad integer in word literal");
    BigInt v = 0;
    for (; k < s.size(); ++k) {
        if (!std::isdigit((unsigned char)s[k])) throw std::invalid_argument("bad integer in word literal");
        v = v * 10 + (s[k] - '0');
    }
    return neg ? BigInt(-v) : v;
}

}  // namespace

Word parse_word(std::string_view text, int d) {
    (void)Base{d};
    std::vector<Letter> ls;
    size_t i = 0;
    bool tuples = text.find('(') != std::string_view::npos;
    if (tuples) {
        while (i < text.size()) {
            if (std::isspace((unsigned char)text[i])) { ++i; continue; }
            if (text[i] != '(') throw std::invalid_argument("expected '(' in word literal");
            size_t close = text.find(')', i);
            if (close == std::string_view::npos) throw std::invalid_argument("unclosed '(' in word literal");
            std::string_view body = text.substr(i + 1, close - i - 1);
            Letter l;
            size_t start = 0;
            while (true) {
                size_t comma = body.find(',', start);
                l.push_back(parse_int(body.substr(start, comma == std::string_view::npos ? body.npos : comma - start)));
                if (comma == std::string_view::npos) break;
                start = comma + 1;
            }
            ls.push_back(std::move(l));
            i = close + 1;
        }
    } else {
        // whitespace-separated integers, or one run of digit characters (one digit per letter)
        std::string t(text);
        std::istringstream in(t);
        std::vector<std::string> toks;
        for (std::string tok; in >> tok;) toks.push_back(tok);
        if (toks.size() == 1 && toks[0].find('-') == std::string::npos) {
            for (char c : toks[0]) {
                if (!std::isdigit((unsigned char)c)) throw std::invalid_argument("bad digit in word literal");
                ls.push_back(Letter{BigInt(c - '0')});
            }
        } else {
            for (auto& tok : toks) ls.push_back(Letter{parse_int(tok)});
        }
    }
    int dim = ls.empty() ? 1 : (int)ls[0].size();
    return Word(d, dim, std::move(ls));
}

std::string format_letter(const Letter& l) {
    std::string s = "(";
    for (size_t k = 0; k < l.size(); ++k) {
        if (k) s += ",";
        s += l[k].str();
    }
    return s + ")";
}

std::string format_word(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += " ";
        s += format_letter(w.letters[i]);
    }
    return s;
}

std::string format_tuple(const Tuple& t) {
    if (t.size() == 1) return t[0].str();
    return format_letter(t);
}

}  // namespace autostab
