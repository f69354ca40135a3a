#include "autostab/ldelta.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace autostab {

using nlohmann::json;

namespace {

long long pmod(long long a, long long b) {
    long long r = a % b;
    return r < 0 ? r + b : r;
}

}  // namespace

// ---- formulas ----

LFormula LFormula::truth(bool v) {
    LFormula f;
    f.kind = v ? Kind::True : Kind::False;
    return f;
}

LFormula LFormula::mod(LTerm a, long long delta, long long K) {
    if (delta < 1) throw std::invalid_argument("modulus must be positive");
    LFormula f;
    f.kind = Kind::Mod;
    f.a = a;
    f.delta = delta;
    f.K = K;
    return f;
}

LFormula LFormula::eq(LTerm a, LTerm b) {
    LFormula f;
    f.kind = Kind::Eq;
    f.a = a;
    f.b = b;
    return f;
}

LFormula LFormula::lt(LTerm a, LTerm b) {
    LFormula f;
    f.kind = Kind::Lt;
    f.a = a;
    f.b = b;
    return f;
}

LFormula LFormula::neg(LFormula g) {
    if (g.kind == Kind::True) return truth(false);
    if (g.kind == Kind::False) return truth(true);
    if (g.kind == Kind::Not) return g.kids[0];
    LFormula f;
    f.kind = Kind::Not;
    f.kids.push_back(std::move(g));
    return f;
}

static LFormula junction(std::vector<LFormula> fs, bool conj) {
    using K = LFormula::Kind;
    K self = conj ? K::And : K::Or;
    K unit = conj ? K::True : K::False;
    K absorb = conj ? K::False : K::True;
    std::vector<LFormula> out;
    for (auto& f : fs) {
        if (f.kind == unit) continue;
        if (f.kind == absorb) return LFormula::truth(!conj);
        if (f.kind == self)
            for (auto& k : f.kids) out.push_back(std::move(k));
        else
            out.push_back(std::move(f));
    }
    if (out.empty()) return LFormula::truth(conj);
    if (out.size() == 1) return out[0];
    LFormula f;
    f.kind = self;
    f.kids = std::move(out);
    return f;
}

LFormula LFormula::all(std::vector<LFormula> fs) { return junction(std::move(fs), true); }
LFormula LFormula::any(std::vector<LFormula> fs) { return junction(std::move(fs), false); }

bool LFormula::has_order() const {
    if (kind == Kind::Lt) return true;
    for (auto& k : kids)
        if (k.has_order()) return true;
    return false;
}

int LFormula::arity() const {
    int m = std::max(a.var, b.var) + 1;
    if (kind != Kind::Mod && kind != Kind::Eq && kind != Kind::Lt) m = 0;
    for (auto& k : kids) m = std::max(m, k.arity());
    return m;
}

size_t LFormula::size() const {
    size_t s = 1;
    for (auto& k : kids) s += k.size();
    return s;
}

static std::string term_str(const LTerm& t) {
    if (t.var < 0) return std::to_string(t.e);
    std::string x = "x" + std::to_string(t.var + 1);
    if (t.e == 0) return x;
    return "(S " + std::to_string(t.e) + " " + x + ")";
}

std::string LFormula::str() const {
    switch (kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Mod: return "(mod " + term_str(a) + " " + std::to_string(delta) + " " + std::to_string(K) + ")";
        case Kind::Eq: return "(eq " + term_str(a) + " " + term_str(b) + ")";
        case Kind::Lt: return "(lt " + term_str(a) + " " + term_str(b) + ")";
        case Kind::Not: return "(not " + kids[0].str() + ")";
        default: {
            std::string s = kind == Kind::And ? "(and" : "(or";
            for (auto& k : kids) s += " " + k.str();
            return s + ")";
        }
    }
}

bool LFormula::operator==(const LFormula& o) const {
    return kind == o.kind && a == o.a && b == o.b && K == o.K && delta == o.delta && kids == o.kids;
}

// ---- parsing ----

namespace {

struct Parser {
    std::vector<std::string> toks;
    size_t i = 0;

    explicit Parser(std::string_view s) {
        std::string cur;
        auto flush = [&] {
            if (!cur.empty()) toks.push_back(cur), cur.clear();
        };
        for (char c : s) {
            if (c == '(' || c == ')') {
                flush();
                toks.push_back(std::string(1, c));
            } else if (std::isspace((unsigned char)c)) {
                flush();
            } else {
                cur += c;
            }
        }
        flush();
    }
    const std::string& peek() {
        if (i >= toks.size()) throw std::invalid_argument("formula: unexpected end");
        return toks[i];
    }
    std::string next() {
        std::string t = peek();
        ++i;
        return t;
    }
    void expect(const std::string& t) {
        if (next() != t) throw std::invalid_argument("formula: expected '" + t + "'");
    }
    static long long number(const std::string& t) {
        size_t pos = 0;
        long long v = std::stoll(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("formula: bad number '" + t + "'");
        return v;
    }
    LTerm term() {
        std::string t = next();
        if (t == "(") {
            expect("S");
            long long e = number(next());
            if (e < 0) throw std::invalid_argument("formula: negative successor count");
            LTerm inner = term();
            expect(")");
            inner.e += e;
            return inner;
        }
        if (t.size() > 1 && t[0] == 'x') {
            long long v = number(t.substr(1));
            if (v < 1) throw std::invalid_argument("formula: variables start at x1");
            return LTerm::x((int)v - 1);
        }
        long long v = number(t);
        if (v < 0) throw std::invalid_argument("formula: constants are natural numbers");
        return LTerm::k(v);
    }
    LFormula formula() {
        std::string t = next();
        if (t == "true") return LFormula::truth(true);
        if (t == "false") return LFormula::truth(false);
        if (t != "(") throw std::invalid_argument("formula: unexpected '" + t + "'");
        std::string op = next();
        LFormula f;
        if (op == "and" || op == "or") {
            std::vector<LFormula> ks;
            while (peek() != ")") ks.push_back(formula());
            f.kind = op == "and" ? LFormula::Kind::And : LFormula::Kind::Or;
            if (ks.empty()) f = LFormula::truth(op == "and");
            else f.kids = std::move(ks);
        } else if (op == "not") {
            f.kind = LFormula::Kind::Not;
            f.kids.push_back(formula());
        } else if (op == "mod") {
            LTerm a = term();
            long long dl = number(next());
            long long K = number(next());
            f = LFormula::mod(a, dl, K);
        } else if (op == "eq" || op == "lt" || op == "le" || op == "gt" || op == "ge") {
            LTerm a = term(), b = term();
            if (op == "eq") f = LFormula::eq(a, b);
            if (op == "lt") f = LFormula::lt(a, b);
            if (op == "gt") f = LFormula::lt(b, a);
            if (op == "le") f = LFormula::neg(LFormula::lt(b, a));
            if (op == "ge") f = LFormula::neg(LFormula::lt(a, b));
        } else {
            throw std::invalid_argument("formula: unknown operator '" + op + "'");
        }
        expect(")");
        return f;
    }
};

}  // namespace

LFormula parse_ldelta(std::string_view text) {
    Parser p(text);
    LFormula f = p.formula();
    if (p.i != p.toks.size()) throw std::invalid_argument("formula: trailing input");
    return f;
}

static long long term_value(const LTerm& t, const std::vector<long long>& x) {
    if (t.var < 0) return t.e;
    if ((size_t)t.var >= x.size()) throw std::out_of_range("formula variable outside the tuple");
    return x[(size_t)t.var] + t.e;
}

bool eval_ldelta(const LFormula& f, const std::vector<long long>& x) {
    using K = LFormula::Kind;
    switch (f.kind) {
        case K::True: return true;
        case K::False: return false;
        case K::Mod: return pmod(term_value(f.a, x) - f.K, f.delta) == 0;
        case K::Eq: return term_value(f.a, x) == term_value(f.b, x);
        case K::Lt: return term_value(f.a, x) < term_value(f.b, x);
        case K::Not: return !eval_ldelta(f.kids[0], x);
        case K::And:
            for (auto& k : f.kids)
                if (!eval_ldelta(k, x)) return false;
            return true;
        case K::Or:
            for (auto& k : f.kids)
                if (eval_ldelta(k, x)) return true;
            return false;
    }
    return false;
}

// ---- normalization ----

static LFormula eq_const(int var, long long K) {
    if (K < 0) return LFormula::truth(false);
    return LFormula::eq(LTerm::x(var), LTerm::k(K));
}

// x_var < K
static LFormula below(int var, long long K) {
    std::vector<LFormula> ds;
    for (long long c = 0; c < K; ++c) ds.push_back(eq_const(var, c));
    return LFormula::any(ds);
}

LFormula normalize_ldelta(const LFormula& f) {
    using K = LFormula::Kind;
    switch (f.kind) {
        case K::True:
        case K::False: return f;
        case K::Mod: {
            if (f.a.var < 0) return LFormula::truth(pmod(f.a.e - f.K, f.delta) == 0);
            if (f.delta == 1) return LFormula::truth(true);
            return LFormula::mod(LTerm::x(f.a.var), f.delta, pmod(f.K - f.a.e, f.delta));
        }
        case K::Eq: {
            LTerm a = f.a, b = f.b;
            if (a.var < 0 && b.var < 0) return LFormula::truth(a.e == b.e);
            if (a.var < 0) std::swap(a, b);
            if (b.var < 0) return eq_const(a.var, b.e - a.e);
            if (a.var == b.var) return LFormula::truth(a.e == b.e);
            if (a.e < b.e) std::swap(a, b);
            return LFormula::eq(LTerm::x(a.var, a.e - b.e), LTerm::x(b.var));
        }
        case K::Lt: {
            const LTerm &a = f.a, &b = f.b;
            if (a.var < 0 && b.var < 0) return LFormula::truth(a.e < b.e);
            if (b.var < 0) return below(a.var, b.e - a.e);                          // x + e < K
            if (a.var < 0) return LFormula::neg(below(b.var, a.e - b.e + 1));       // K < x + e
            if (a.var == b.var) return LFormula::truth(a.e < b.e);
            if (a.e >= b.e) return LFormula::lt(LTerm::x(a.var, a.e - b.e), LTerm::x(b.var));
            long long g = b.e - a.e;   // x_i < S^g x_j  iff  not (S^g x_j < x_i or S^g x_j = x_i)
            return LFormula::neg(LFormula::any(
                {LFormula::lt(LTerm::x(b.var, g), LTerm::x(a.var)), LFormula::eq(LTerm::x(b.var, g), LTerm::x(a.var))}));
        }
        case K::Not: return LFormula::neg(normalize_ldelta(f.kids[0]));
        case K::And:
        case K::Or: {
            std::vector<LFormula> ks;
            for (auto& k : f.kids) ks.push_back(normalize_ldelta(k));
            return f.kind == K::And ? LFormula::all(ks) : LFormula::any(ks);
        }
    }
    return f;
}

LdeltaParams ldelta_params(const LFormula& f) {
    using K = LFormula::Kind;
    LdeltaParams p;
    std::function<void(const LFormula&)> go = [&](const LFormula& g) {
        if (g.kind == K::Mod) p.delta = std::lcm(p.delta, g.delta);
        if (g.kind == K::Eq || g.kind == K::Lt) p.M = std::max(p.M, std::max(g.a.e, g.b.e) + 1);
        for (auto& k : g.kids) go(k);
    };
    go(f);
    return p;
}

// ---- ladders ----

std::vector<long long> LadderWitness::combine(size_t i, size_t j) const {
    std::vector<long long> x((size_t)nvars, 0);
    for (size_t a = 0; a < left.size(); ++a) x[(size_t)left[a]] = rows[i][a];
    for (size_t a = 0; a < right.size(); ++a) x[(size_t)right[a]] = cols[j][a];
    return x;
}

bool verify_witness(const LFormula& f, const LadderWitness& w) {
    if ((int)w.rows.size() != w.N + 1 || (int)w.cols.size() != w.N + 1) return false;
    for (size_t i = 0; i < w.rows.size(); ++i)
        for (size_t j = 0; j < w.cols.size(); ++j)
            if (eval_ldelta(f, w.combine(i, j)) != (i <= j)) return false;
    return true;
}

json to_json(const LadderWitness& w) {
    return {{"N", w.N}, {"nvars", w.nvars}, {"left", w.left}, {"right", w.right}, {"rows", w.rows}, {"cols", w.cols}};
}

// ---- loci ----

long long Locus::Group::span() const { return off.empty() ? 0 : *std::max_element(off.begin(), off.end()); }

long long Locus::zero_max() const {
    long long m = 0;
    for (long long v : zero) m = std::max(m, v);
    return m;
}

std::string Locus::key() const {
    std::string s;
    for (long long v : zero) s += std::to_string(v) + ",";
    for (auto& g : groups) {
        s += "|" + std::to_string(g.res) + ":";
        for (size_t i = 0; i < g.vars.size(); ++i) s += std::to_string(g.vars[i]) + "@" + std::to_string(g.off[i]) + ",";
    }
    return s;
}

static int anchor_of(const Locus::Group& g) {
    for (size_t i = 0; i < g.vars.size(); ++i)
        if (g.off[i] == 0) return (int)i;
    return 0;
}

bool Locus::contains(const std::vector<long long>& x, long long delta) const {
    for (size_t i = 0; i < zero.size(); ++i)
        if (zero[i] >= 0 && x[i] != zero[i]) return false;
    for (auto& g : groups) {
        long long a = x[(size_t)g.vars[(size_t)anchor_of(g)]];
        if (pmod(a - g.res, delta) != 0) return false;
        for (size_t i = 0; i < g.vars.size(); ++i)
            if (x[(size_t)g.vars[i]] != a + g.off[i]) return false;
    }
    return true;
}

bool Locus::includes(const Locus& sub, long long delta) const {
    // position of each variable in sub: exact value, or (group, offset)
    size_t n = zero.size();
    std::vector<int> grp(n, -1);
    std::vector<long long> pos(n, 0);
    for (size_t i = 0; i < n; ++i)
        if (sub.zero[i] >= 0) pos[i] = sub.zero[i];
    for (size_t g = 0; g < sub.groups.size(); ++g)
        for (size_t i = 0; i < sub.groups[g].vars.size(); ++i) {
            grp[(size_t)sub.groups[g].vars[i]] = (int)g;
            pos[(size_t)sub.groups[g].vars[i]] = sub.groups[g].off[i];
        }
    for (size_t i = 0; i < n; ++i)
        if (zero[i] >= 0 && (grp[i] >= 0 || pos[i] != zero[i])) return false;
    for (auto& g : groups) {
        size_t a = (size_t)g.vars[(size_t)anchor_of(g)];
        for (size_t i = 0; i < g.vars.size(); ++i) {
            size_t v = (size_t)g.vars[i];
            if (grp[v] != grp[a] || pos[v] - pos[a] != g.off[i]) return false;
        }
        long long r = grp[a] < 0 ? pos[a] : sub.groups[(size_t)grp[a]].res + pos[a];
        if (pmod(r - g.res, delta) != 0) return false;
    }
    return true;
}

LFormula Locus::formula(long long delta) const {
    std::vector<LFormula> cs;
    for (size_t i = 0; i < zero.size(); ++i)
        if (zero[i] >= 0) cs.push_back(LFormula::eq(LTerm::x((int)i), LTerm::k(zero[i])));
    for (auto& g : groups) {
        int a = g.vars[(size_t)anchor_of(g)];
        if (delta > 1) cs.push_back(LFormula::mod(LTerm::x(a), delta, g.res));
        for (size_t i = 0; i < g.vars.size(); ++i)
            if (g.vars[i] != a) cs.push_back(LFormula::eq(LTerm::x(a, g.off[i]), LTerm::x(g.vars[i])));
    }
    return LFormula::all(cs);
}

bool locus_expr_contains(const LocusExprPtr& e, const std::vector<long long>& x, long long delta) {
    if (!e) return false;
    switch (e->kind) {
        case LocusExpr::Kind::Locus: return e->locus.contains(x, delta);
        case LocusExpr::Kind::Union:
            for (auto& k : e->kids)
                if (locus_expr_contains(k, x, delta)) return true;
            return false;
        case LocusExpr::Kind::Minus:
            return locus_expr_contains(e->kids[0], x, delta) && !locus_expr_contains(e->kids[1], x, delta);
    }
    return false;
}

LFormula locus_expr_formula(const LocusExprPtr& e, long long delta) {
    if (!e) return LFormula::truth(false);
    switch (e->kind) {
        case LocusExpr::Kind::Locus: return e->locus.formula(delta);
        case LocusExpr::Kind::Union: {
            std::vector<LFormula> ks;
            for (auto& k : e->kids) ks.push_back(locus_expr_formula(k, delta));
            return LFormula::any(ks);
        }
        case LocusExpr::Kind::Minus:
            return LFormula::all({locus_expr_formula(e->kids[0], delta),
                                  LFormula::neg(locus_expr_formula(e->kids[1], delta))});
    }
    return LFormula::truth(false);
}

size_t locus_expr_size(const LocusExprPtr& e) {
    if (!e) return 0;
    size_t s = 1;
    for (auto& k : e->kids) s += locus_expr_size(k);
    return s;
}

namespace {

LocusExprPtr make_locus(const Locus& L) {
    auto e = std::make_shared<LocusExpr>();
    e->kind = LocusExpr::Kind::Locus;
    e->locus = L;
    return e;
}

LocusExprPtr make_minus(LocusExprPtr a, LocusExprPtr b) {
    if (!a) return nullptr;
    if (!b) return a;
    auto e = std::make_shared<LocusExpr>();
    e->kind = LocusExpr::Kind::Minus;
    e->kids = {std::move(a), std::move(b)};
    return e;
}

LocusExprPtr make_union(const std::vector<LocusExprPtr>& xs, long long delta) {
    std::vector<LocusExprPtr> flat;
    std::set<const LocusExpr*> seen;
    std::function<void(const LocusExprPtr&)> add = [&](const LocusExprPtr& x) {
        if (!x) return;
        if (x->kind == LocusExpr::Kind::Union) {
            for (auto& k : x->kids) add(k);
            return;
        }
        if (seen.insert(x.get()).second) flat.push_back(x);
    };
    for (auto& x : xs) add(x);
    // drop loci covered by another plain locus
    std::vector<char> drop(flat.size(), 0);
    for (size_t i = 0; i < flat.size(); ++i) {
        if (flat[i]->kind != LocusExpr::Kind::Locus) continue;
        for (size_t j = 0; j < flat.size() && !drop[i]; ++j) {
            if (i == j || drop[j] || flat[j]->kind != LocusExpr::Kind::Locus) continue;
            if (flat[j]->locus.includes(flat[i]->locus, delta)) drop[i] = 1;
        }
    }
    std::vector<LocusExprPtr> out;
    for (size_t i = 0; i < flat.size(); ++i)
        if (!drop[i]) out.push_back(flat[i]);
    if (out.empty()) return nullptr;
    if (out.size() == 1) return out[0];
    auto e = std::make_shared<LocusExpr>();
    e->kind = LocusExpr::Kind::Union;
    e->kids = std::move(out);
    return e;
}

void canonicalize(Locus& L) {
    for (auto& g : L.groups) {
        std::vector<size_t> idx(g.vars.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return g.vars[a] < g.vars[b]; });
        Locus::Group h;
        h.res = g.res;
        for (size_t i : idx) h.vars.push_back(g.vars[i]), h.off.push_back(g.off[i]);
        g = h;
    }
    std::sort(L.groups.begin(), L.groups.end(),
              [](const Locus::Group& a, const Locus::Group& b) { return a.vars[0] < b.vars[0]; });
}

struct Unstable {
    Locus L;
    std::vector<size_t> order;
    size_t p;
    bool first;
};

struct Engine {
    int n;
    long long M, delta;
    const TupleOracle& X;
    struct Info {
        LocusExprPtr G, B;
    };
    std::map<std::string, Info> memo;

    // generic realization with groups in the given order
    std::vector<long long> realize(const Locus& L, const std::vector<size_t>& order) const {
        std::vector<long long> x((size_t)n, 0);
        for (size_t i = 0; i < (size_t)n; ++i)
            if (L.zero[i] >= 0) x[i] = L.zero[i];
        long long cur = L.zero_max() + M;
        for (size_t g : order) {
            const auto& G = L.groups[g];
            long long a = cur + pmod(G.res - cur, delta);
            for (size_t i = 0; i < G.vars.size(); ++i) x[(size_t)G.vars[i]] = a + G.off[i];
            cur = a + G.span() + M;
        }
        return x;
    }

    std::vector<Locus> subloci(const Locus& L) const {
        std::map<std::string, Locus> out;
        auto add = [&](Locus S) {
            canonicalize(S);
            out.emplace(S.key(), S);
        };
        std::vector<long long> zvals = {0};
        for (long long v : L.zero)
            if (v >= 0) zvals.push_back(v);
        for (size_t h = 0; h < L.groups.size(); ++h) {
            const auto& H = L.groups[h];
            std::set<long long> vs;
            for (long long z : zvals)
                for (long long o : H.off)
                    for (long long v = z - o - M + 1; v <= z - o + M - 1; ++v)
                        if (v >= 0 && pmod(v - H.res, delta) == 0) vs.insert(v);
            for (long long v : vs) {
                Locus S = L;
                for (size_t i = 0; i < H.vars.size(); ++i) S.zero[(size_t)H.vars[i]] = v + H.off[i];
                S.groups.erase(S.groups.begin() + (long)h);
                add(S);
            }
        }
        for (size_t g = 0; g < L.groups.size(); ++g)
            for (size_t h = g + 1; h < L.groups.size(); ++h) {
                const auto &G = L.groups[g], &H = L.groups[h];
                std::set<long long> Ds;
                for (long long oi : G.off)
                    for (long long oj : H.off)
                        for (long long D = oi - oj - M + 1; D <= oi - oj + M - 1; ++D)
                            if (pmod(D - (H.res - G.res), delta) == 0) Ds.insert(D);
                for (long long D : Ds) {
                    Locus::Group m;
                    for (size_t i = 0; i < G.vars.size(); ++i) m.vars.push_back(G.vars[i]), m.off.push_back(G.off[i]);
                    for (size_t j = 0; j < H.vars.size(); ++j) m.vars.push_back(H.vars[j]), m.off.push_back(D + H.off[j]);
                    long long s = *std::min_element(m.off.begin(), m.off.end());
                    for (auto& o : m.off) o -= s;
                    m.res = pmod(G.res + s, delta);
                    Locus S;
                    S.zero = L.zero;
                    for (size_t k = 0; k < L.groups.size(); ++k)
                        if (k != g && k != h) S.groups.push_back(L.groups[k]);
                    S.groups.push_back(m);
                    add(S);
                }
            }
        std::vector<Locus> r;
        for (auto& [k, S] : out) r.push_back(S);
        return r;
    }

    bool generic_truth(const Locus& L) const {
        size_t k = L.groups.size();
        std::vector<size_t> order(k);
        std::iota(order.begin(), order.end(), 0);
        bool first = X(realize(L, order));
        if (k < 2) return first;
        std::map<std::vector<size_t>, bool> val;
        do {
            val[order] = X(realize(L, order));
        } while (std::next_permutation(order.begin(), order.end()));
        for (auto& [o, v] : val)
            for (size_t p = 1; p < k; ++p) {
                auto o2 = o;
                std::swap(o2[p - 1], o2[p]);
                if (val[o2] != v) throw Unstable{L, o, p, v};
            }
        return first;
    }

    const Info& compute(const Locus& L) {
        std::string key = L.key();
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool good = generic_truth(L);
        std::vector<LocusExprPtr> parts;
        for (auto& S : subloci(L)) {
            const Info& si = compute(S);
            parts.push_back(good ? si.B : si.G);
        }
        LocusExprPtr sub = make_union(parts, delta);
        Info info;
        if (good) {
            info.B = sub;
            info.G = make_minus(make_locus(L), sub);
        } else {
            info.G = sub;
            info.B = make_minus(make_locus(L), sub);
        }
        return memo[key] = info;
    }

    LadderWitness ladder(const Unstable& u, int N) const {
        const Locus& L = u.L;
        LadderWitness w;
        w.N = N;
        w.nvars = n;
        for (int i = 0; i < n; ++i)
            if (L.zero[(size_t)i] >= 0) w.left.push_back(i);
        for (size_t q = 0; q < u.p; ++q)
            for (int v : L.groups[u.order[q]].vars) w.left.push_back(v);
        for (size_t q = u.p; q < u.order.size(); ++q)
            for (int v : L.groups[u.order[q]].vars) w.right.push_back(v);

        std::vector<long long> base((size_t)n, 0);
        for (size_t i = 0; i < (size_t)n; ++i)
            if (L.zero[i] >= 0) base[i] = L.zero[i];
        long long cur = L.zero_max() + M;
        auto place = [&](size_t g, std::vector<long long>& x) {
            const auto& G = L.groups[g];
            long long a = cur + pmod(G.res - cur, delta);
            for (size_t i = 0; i < G.vars.size(); ++i) x[(size_t)G.vars[i]] = a + G.off[i];
            cur = a + G.span() + M;
        };
        for (size_t q = 0; q + 1 < u.p; ++q) place(u.order[q], base);
        size_t levels = (size_t)N + 2;
        std::vector<std::vector<long long>> lo(levels, base), hi(levels, base);
        for (size_t k = 0; k < levels; ++k) {
            place(u.order[u.p - 1], lo[k]);
            place(u.order[u.p], hi[k]);
        }
        std::vector<long long> tail = base;
        for (size_t q = u.p + 1; q < u.order.size(); ++q) place(u.order[q], tail);
        auto pick = [](const std::vector<long long>& x, const std::vector<int>& vars) {
            std::vector<long long> r;
            for (int v : vars) r.push_back(x[(size_t)v]);
            return r;
        };
        auto with_tail = [&](std::vector<long long> x) {
            for (size_t q = u.p + 1; q < u.order.size(); ++q)
                for (int v : L.groups[u.order[q]].vars) x[(size_t)v] = tail[(size_t)v];
            return x;
        };
        for (int i = 0; i <= N; ++i) {
            // when the displayed order is the false one, reverse the roles: k = N+1-i, l = N-j
            size_t k = u.first ? (size_t)i : (size_t)(N + 1 - i);
            size_t l = u.first ? (size_t)i : (size_t)(N - i);
            w.rows.push_back(pick(lo[k], w.left));
            w.cols.push_back(pick(with_tail(hi[l]), w.right));
        }
        return w;
    }
};

}  // namespace

StabilityAnalysis analyze_stability(int nvars, long long M, long long delta, const TupleOracle& X, int N) {
    if (M < 1 || delta < 1) throw std::invalid_argument("analyze_stability: M and delta must be positive");
    Engine E{nvars, M, delta, X, {}};
    StabilityAnalysis out;
    try {
        std::vector<LocusExprPtr> tops;
        std::vector<long long> res((size_t)nvars, 0);
        while (true) {
            Locus L;
            L.zero.assign((size_t)nvars, -1);
            for (int i = 0; i < nvars; ++i) L.groups.push_back({{i}, {0}, res[(size_t)i]});
            tops.push_back(E.compute(L).G);
            size_t i = 0;
            while (i < (size_t)nvars && ++res[i] == delta) res[i++] = 0;
            if (i == (size_t)nvars) break;
        }
        out.stable = true;
        out.good = make_union(tops, delta);
    } catch (const Unstable& u) {
        out.stable = false;
        out.ladder = E.ladder(u, N);
    }
    out.loci = E.memo.size();
    return out;
}

long long RewriteResult::small_model_bound() const { return params.M + 4 * params.delta * (nvars + 2); }

RewriteResult ldelta_rewrite(const LFormula& f, int N, int nvars) {
    LFormula g = normalize_ldelta(f);
    RewriteResult r;
    r.params = ldelta_params(g);
    r.nvars = nvars < 0 ? std::max(f.arity(), 1) : nvars;
    if (r.nvars < f.arity()) throw std::invalid_argument("ldelta_rewrite: formula uses more variables");
    auto oracle = [&](const std::vector<long long>& x) { return eval_ldelta(g, x); };
    auto A = analyze_stability(r.nvars, r.params.M, r.params.delta, oracle, N);
    r.loci = A.loci;
    if (A.stable) {
        r.formula = locus_expr_formula(A.good, r.params.delta);
    } else {
        if (!verify_witness(f, *A.ladder)) throw std::logic_error("ldelta_rewrite: constructed ladder does not verify");
        r.ladder = A.ladder;
    }
    return r;
}

}  // namespace autostab
