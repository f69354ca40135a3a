#include "autostab/expr.hpp"
#include "autostab/corpus.hpp"
#include "autostab/fsets.hpp"

#include <cctype>
#include <set>

namespace autostab {

SyntaxError::SyntaxError(const std::string& msg, size_t line_, size_t col_)
    : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " + std::to_string(col_)),
      line(line_), col(col_) {}

namespace {

// ---- regexes: Glushkov position automaton ----

struct RNode {
    enum K { Empty, Sym, Alt, Cat, Star, Plus, Opt } k = Empty;
    std::vector<int> digits;   // Sym: allowed digits
    std::vector<RNode> kids;
};

struct RParser {
    std::string_view s;
    int d;
    size_t i = 0;

    [[noreturn]] void fail(const std::string& m) const { throw SyntaxError("regex: " + m, 1, i + 1); }
    bool eof() const { return i >= s.size(); }
    char peek() const { return eof() ? '\0' : s[i]; }

    int digit(char c) const {
        int v = -1;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'z') v = c - 'a' + 10;
        else fail(std::string("unexpected '") + c + "'");
        if (v >= d) fail("digit " + std::to_string(v) + " not below the base");
        return v;
    }

    RNode alt() {
        RNode a = cat();
        if (peek() != '|') return a;
        RNode r;
        r.k = RNode::Alt;
        r.kids.push_back(a);
        while (peek() == '|') {
            ++i;
            r.kids.push_back(cat());
        }
        return r;
    }
    RNode cat() {
        RNode r;
        r.k = RNode::Cat;
        while (!eof() && peek() != '|' && peek() != ')') r.kids.push_back(post());
        if (r.kids.empty()) return RNode{};
        if (r.kids.size() == 1) return r.kids[0];
        return r;
    }
    RNode post() {
        RNode a = atom();
        while (peek() == '*' || peek() == '+' || peek() == '?') {
            RNode r;
            r.k = peek() == '*' ? RNode::Star : peek() == '+' ? RNode::Plus : RNode::Opt;
            ++i;
            r.kids.push_back(a);
            a = r;
        }
        return a;
    }
    RNode atom() {
        char c = peek();
        if (c == '(') {
            ++i;
            RNode a = alt();
            if (peek() != ')') fail("missing ')'");
            ++i;
            return a;
        }
        RNode r;
        r.k = RNode::Sym;
        if (c == '.') {
            ++i;
            for (int v = 0; v < d; ++v) r.digits.push_back(v);
            return r;
        }
        if (c == '[') {
            ++i;
            bool neg = peek() == '^';
            if (neg) ++i;
            std::set<int> in;
            while (!eof() && peek() != ']') {
                int a = digit(s[i++]);
                int b = a;
                if (peek() == '-') {
                    ++i;
                    b = digit(s[i++]);
                }
                for (int v = a; v <= b; ++v) in.insert(v);
            }
            if (peek() != ']') fail("missing ']'");
            ++i;
            for (int v = 0; v < d; ++v)
                if (in.count(v) != neg) r.digits.push_back(v);
            return r;
        }
        if (c == '*' || c == '+' || c == '?' || c == ')' || c == '|') fail(std::string("unexpected '") + c + "'");
        r.digits.push_back(digit(c));
        ++i;
        return r;
    }
};

struct Glushkov {
    std::vector<std::vector<int>> sym;   // position -> digits
    std::vector<std::set<int>> follow;

    struct Info {
        bool nullable = false;
        std::set<int> first, last;
    };

    Info walk(const RNode& n) {
        Info r;
        switch (n.k) {
            case RNode::Empty: r.nullable = true; break;
            case RNode::Sym: {
                int p = (int)sym.size();
                sym.push_back(n.digits);
                follow.emplace_back();
                r.first = r.last = {p};
                break;
            }
            case RNode::Alt:
                for (auto& k : n.kids) {
                    Info a = walk(k);
                    r.nullable |= a.nullable;
                    r.first.insert(a.first.begin(), a.first.end());
                    r.last.insert(a.last.begin(), a.last.end());
                }
                break;
            case RNode::Cat: {
                r.nullable = true;
                for (auto& k : n.kids) {
                    Info a = walk(k);
                    for (int p : r.last) follow[(size_t)p].insert(a.first.begin(), a.first.end());
                    if (r.nullable) r.first.insert(a.first.begin(), a.first.end());
                    if (a.nullable) r.last.insert(a.last.begin(), a.last.end());
                    else r.last = a.last;
                    r.nullable = r.nullable && a.nullable;
                }
                break;
            }
            case RNode::Star:
            case RNode::Plus:
            case RNode::Opt: {
                Info a = walk(n.kids[0]);
                if (n.k != RNode::Opt)
                    for (int p : a.last) follow[(size_t)p].insert(a.first.begin(), a.first.end());
                r = a;
                r.nullable = a.nullable || n.k != RNode::Plus;
                break;
            }
        }
        return r;
    }
};

// ---- set expressions ----

struct EParser {
    std::string_view s;
    size_t i = 0;

    std::pair<size_t, size_t> where(size_t at) const {
        size_t line = 1, col = 1;
        for (size_t k = 0; k < at && k < s.size(); ++k) {
            if (s[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }
    [[noreturn]] void fail(const std::string& m) const {
        auto [l, c] = where(i);
        throw SyntaxError(m, l, c);
    }
    void ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    char peek() {
        ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++i;
    }
    BigInt integer() {
        ws();
        size_t j = i;
        if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
        size_t k = j;
        while (k < s.size() && std::isdigit((unsigned char)s[k])) ++k;
        if (k == j) fail("expected an integer");
        BigInt v(std::string(s.substr(j, k - j)));
        if (s[i] == '-') v = -v;
        i = k;
        return v;
    }
    std::string ident() {
        ws();
        size_t j = i;
        while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_' || s[j] == '-')) ++j;
        if (j == i) fail("expected a name");
        std::string r(s.substr(i, j - i));
        i = j;
        return r;
    }

    SetExpr expr() {
        SetExpr a = sum();
        while (true) {
            char c = peek();
            if (c != '|' && c != '&' && c != '\\' && c != '^') return a;
            ++i;
            SetExpr r;
            r.op = std::string(1, c);
            r.kids = {a, sum()};
            a = r;
        }
    }
    SetExpr sum() {
        SetExpr a = unary();
        while (peek() == '+') {
            ++i;
            SetExpr r;
            r.op = "+";
            r.kids = {a, unary()};
            a = r;
        }
        return a;
    }
    SetExpr unary() {
        char c = peek();
        if (c == '~' || c == '-') {
            ++i;
            SetExpr r;
            r.op = c == '~' ? "compl" : "negate";
            r.kids = {unary()};
            return r;
        }
        return atom();
    }
    SetExpr atom() {
        char c = peek();
        if (c == '(') {
            ++i;
            SetExpr e = expr();
            expect(')');
            return e;
        }
        if (c == '{') {
            ++i;
            SetExpr e;
            e.op = "set";
            if (peek() != '}') {
                e.nums.push_back(integer());
                while (peek() == ',') {
                    ++i;
                    e.nums.push_back(integer());
                }
            }
            expect('}');
            return e;
        }
        size_t at = i;
        SetExpr e;
        e.op = ident();
        if (e.op == "re" && peek() == '[') {
            ++i;
            if (ident() != "d") fail("expected d=");
            expect('=');
            e.base = (int)integer();
            expect(']');
        }
        expect('(');
        if (e.op == "powers" || e.op == "naturals" || e.op == "empty" || e.op == "full") {
        } else if (e.op == "C") {
            e.nums.push_back(integer());
            expect(';');
            e.nums.push_back(integer());
        } else if (e.op == "coset") {
            e.nums.push_back(integer());
            expect(',');
            e.nums.push_back(integer());
        } else if (e.op == "re") {
            ws();
            size_t j = i;
            int depth = 0;
            while (j < s.size() && !(s[j] == ')' && depth == 0)) {
                if (s[j] == '(') ++depth;
                if (s[j] == ')') --depth;
                ++j;
            }
            if (j >= s.size()) fail("unterminated regex");
            std::string body(s.substr(i, j - i));
            while (!body.empty() && std::isspace((unsigned char)body.back())) body.pop_back();
            e.text = body;
            i = j;
        } else if (e.op == "corpus") {
            e.text = ident();
        } else if (e.op == "trans") {
            e.nums.push_back(integer());
            expect(',');
            e.kids.push_back(expr());
        } else if (e.op == "compl" || e.op == "negate") {
            e.kids.push_back(expr());
        } else if (e.op == "union" || e.op == "inter" || e.op == "diff") {
            e.kids.push_back(expr());
            while (peek() == ',') {
                ++i;
                e.kids.push_back(expr());
            }
            if (e.op == "diff" && e.kids.size() != 2) fail("diff takes two arguments");
        } else {
            i = at;
            fail("unknown name '" + e.op + "'");
        }
        expect(')');
        return e;
    }
};

}  // namespace

std::string SetExpr::str() const {
    auto list = [&](const std::string& sep) {
        std::string r;
        for (size_t k = 0; k < kids.size(); ++k) r += (k ? sep : "") + kids[k].str();
        return r;
    };
    if (op == "|" || op == "&" || op == "\\" || op == "^" || op == "+") return "(" + list(" " + op + " ") + ")";
    if (op == "set") {
        std::string r = "{";
        for (size_t k = 0; k < nums.size(); ++k) r += (k ? "," : "") + nums[k].str();
        return r + "}";
    }
    if (op == "C") return "C(" + nums[0].str() + ";" + nums[1].str() + ")";
    if (op == "coset") return "coset(" + nums[0].str() + "," + nums[1].str() + ")";
    if (op == "re") return base ? "re[d=" + std::to_string(base) + "](" + text + ")" : "re(" + text + ")";
    if (op == "corpus") return "corpus(" + text + ")";
    if (op == "trans") return "trans(" + nums[0].str() + ", " + kids[0].str() + ")";
    return op + "(" + list(", ") + ")";
}

Nfa regex_nfa(std::string_view re, int d) {
    (void)Base{d};
    RParser p{re, d};
    RNode root = p.alt();
    if (!p.eof()) p.fail("unexpected ')'");
    Glushkov g;
    auto info = g.walk(root);
    Nfa N;
    N.base = d;
    N.alphabet = digit_alphabet(d, 1);
    int np = (int)g.sym.size();
    N.add_state(info.nullable);   // state 0: initial; position p is state p + 1
    for (int q = 0; q < np; ++q) N.add_state(info.last.count(q) > 0);
    N.starts = {0};
    auto link = [&](int from, int pos) {
        for (int v : g.sym[(size_t)pos]) N.at(from, v).push_back(pos + 1);
    };
    for (int p0 : info.first) link(0, p0);
    for (int q = 0; q < np; ++q)
        for (int p1 : g.follow[(size_t)q]) link(q + 1, p1);
    return N;
}

AutoSet regex_set(std::string_view re, int d) { return value_closure(regex_nfa(re, d), d, 1); }

SetExpr parse_set_expr(std::string_view text) {
    EParser p{text};
    SetExpr e = p.expr();
    if (p.peek() != '\0') p.fail("trailing input");
    return e;
}

AutoSet eval_set_expr(const SetExpr& e, int d) {
    auto kid = [&](size_t k) { return eval_set_expr(e.kids[k], d); };
    const std::string& op = e.op;
    if (op == "|" || op == "union") {
        AutoSet r = kid(0);
        for (size_t k = 1; k < e.kids.size(); ++k) r = set_union(r, kid(k));
        return r;
    }
    if (op == "&" || op == "inter") {
        AutoSet r = kid(0);
        for (size_t k = 1; k < e.kids.size(); ++k) r = set_intersection(r, kid(k));
        return r;
    }
    if (op == "\\" || op == "diff") return set_difference(kid(0), kid(1));
    if (op == "^") return set_symdiff(kid(0), kid(1));
    if (op == "+") return minkowski_sum(kid(0), kid(1));
    if (op == "compl") return set_complement(kid(0));
    if (op == "negate") return negate(kid(0));
    if (op == "trans") return translate(kid(0), e.nums[0]);
    if (op == "set") return finite_set(e.nums, d);
    if (op == "powers") return regex_set("0*1", d);
    if (op == "naturals") return naturals(d);
    if (op == "empty") return empty_set(d);
    if (op == "full") return full_set(d);
    if (op == "C") {
        if (e.nums[1] < 1) throw std::invalid_argument("C(a;delta): delta must be positive");
        return cycle_autoset(CycleSet{Tuple{e.nums[0]}, (long long)e.nums[1], d});
    }
    if (op == "coset") return coset_automaton(e.nums[0], e.nums[1], d);
    if (op == "re") {
        if (e.base && e.base != d)
            throw std::invalid_argument("re[d=" + std::to_string(e.base) + "] used with base " + std::to_string(d));
        return regex_set(e.text, d);
    }
    if (op == "corpus") return corpus_build(e.text, d);
    throw std::invalid_argument("unknown set expression '" + op + "'");
}

AutoSet eval_set_expr(std::string_view text, int d) { return eval_set_expr(parse_set_expr(text), d); }

}  // namespace autostab
