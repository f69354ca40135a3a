#include "autostab/fsets.hpp"

#include <algorithm>
#include <set>

namespace autostab {

using nlohmann::json;

static void check_cycle(const CycleSet& C) {
    (void)Base{C.d};
    if (C.delta < 1) throw std::invalid_argument("cycle: delta must be positive");
    if (C.a.empty()) throw std::invalid_argument("cycle: empty tuple");
}

std::vector<Tuple> cycle_elements(const CycleSet& C, size_t n) {
    check_cycle(C);
    std::vector<Tuple> out;
    BigInt f = dpow(C.d, (size_t)C.delta);
    Tuple cur = C.a;
    for (size_t i = 0; i < n; ++i) {
        out.push_back(cur);
        Tuple nx(cur.size());
        for (size_t j = 0; j < cur.size(); ++j) nx[j] = C.a[j] + f * cur[j];
        cur = nx;
    }
    return out;
}

Word cycle_word_form(const CycleSet& C) {
    check_cycle(C);
    size_t m = C.a.size(), delta = (size_t)C.delta;
    std::vector<Letter> ls(delta, Letter(m, BigInt(0)));
    for (size_t j = 0; j < m; ++j) {
        BigInt x = abs(C.a[j]);
        int sg = C.a[j] < 0 ? -1 : 1;
        for (size_t i = 0; i + 1 < delta; ++i) {
            ls[i][j] = sg * (x % C.d);
            x /= C.d;
        }
        ls[delta - 1][j] = sg * x;   // overflow lands in the top letter
    }
    return Word(C.d, (int)m, ls);
}

AutoSet cycle_autoset(const CycleSet& C) {
    Word s = cycle_word_form(C);
    Nfa N;
    N.base = C.d;
    for (auto& l : s.letters)
        if (std::find(N.alphabet.begin(), N.alphabet.end(), l) == N.alphabet.end()) N.alphabet.push_back(l);
    std::sort(N.alphabet.begin(), N.alphabet.end());
    LetterIndex idx(N.alphabet);
    size_t delta = s.size();
    for (size_t i = 0; i <= delta; ++i) N.add_state(i == delta);
    N.starts.push_back(0);
    for (size_t i = 0; i < delta; ++i) N.at((int)i, idx.at(s[i])).push_back((int)i + 1);
    N.at((int)delta, idx.at(s[0])).push_back(delta == 1 ? (int)delta : 1);
    return value_closure(N, C.d, (int)s.dim);
}

CycleRegex cycle_to_regex(const CycleSet& C) {
    check_cycle(C);
    if (C.a.size() != 1) throw std::invalid_argument("cycle_to_regex: dimension must be 1");
    const BigInt& a = C.a[0];
    if (a < 0) throw std::invalid_argument("cycle_to_regex: a must be nonnegative");
    int d = C.d;
    size_t delta = (size_t)C.delta;
    BigInt P = dpow(d, delta);
    // b_i = floor(a (1 - P^-i) / (P - 1)) increases to its limit
    BigInt target = 0;
    if (a > 0) {
        BigInt q = a / (P - 1), r = a % (P - 1);
        target = r == 0 ? q - 1 : q;
    }
    CycleRegex out;
    BigInt val = 0, pw = 1;   // [sigma^i], d^{i delta}
    for (size_t i = 1;; ++i) {
        val = val + pw * a;
        pw *= P;
        BigInt b = val / pw;
        if (!out.carries.empty() && b < out.carries.back()) throw std::logic_error("cycle_to_regex: carry decreased");
        if (b > a) throw std::logic_error("cycle_to_regex: carry exceeds a");
        out.carries.push_back(b);
        if (b == target) {
            out.N = i;
            BigInt c = val % pw;
            out.u = *digits_fixed(c, d, i * delta);
            BigInt p = (b + a) % P;
            out.v = *digits_fixed(p, d, delta);
            out.w = canonical_rep(b, d);
            break;
        }
        out.exceptions.push_back(val);
    }
    return out;
}

static bool all_digit(const Word& w, int digit) {
    for (auto& l : w.letters)
        if (l[0] != digit) return false;
    return true;
}

static Word repeat_digit(int d, int digit, size_t n) {
    Word w(d, 1);
    for (size_t i = 0; i < n; ++i) w.push(Letter{BigInt(digit)});
    return w;
}

TranslatedRegex translate_regex(const BigInt& gamma, const Word& u0, const Word& v0, const Word& w0) {
    int d = u0.d;
    for (const Word* x : {&u0, &v0, &w0}) {
        if (x->dim != 1) throw std::invalid_argument("translate_regex: dimension must be 1");
        for (auto& l : x->letters)
            if (!standard_nonneg(l, d)) throw std::invalid_argument("translate_regex: words must be over Sigma");
    }
    auto elem = [&](size_t k) { return gamma + value(concat(concat(u0, power(v0, k)), w0)); };
    TranslatedRegex out;
    Word u = u0, v = v0, w = w0;
    BigInt g = gamma;
    if (g == 0) {
        out.x = u, out.y = v, out.z = w;
        return out;
    }
    if (v.empty()) {
        BigInt e = elem(0);
        if (e < 0) throw std::invalid_argument("translate_regex: translate leaves N");
        out.x = canonical_rep(e, d);
        out.y = v;
        out.z = Word(d, 1);
        return out;
    }
    if (all_digit(v, d - 1)) {
        // [u v^k w] = ([u] - d^{|u|}) + [0^{|u|} (0^{|v|})^k tau],  [tau] = [w] + 1
        g = g + value(u) - dpow(d, u.size());
        u = repeat_digit(d, 0, u.size());
        v = repeat_digit(d, 0, v.size());
        w = canonical_rep(BigInt(value(w) + 1), d);
        out.rewritten = true;
    }
    if (all_digit(v, 0)) {
        // elements g + [u] + d^{|u| + k|v|} [w]
        BigInt h = g + value(u);
        size_t N = 0;
        if (h >= 0) {
            while (dpow(d, u.size() + N * v.size()) <= h) ++N;
            out.x = *digits_fixed(h, d, u.size() + N * v.size());
            out.y = v;
            out.z = w;
        } else {
            if (value(w) < 1) throw std::invalid_argument("translate_regex: translate leaves N");
            while (dpow(d, u.size() + N * v.size()) + h < 0) ++N;
            size_t M = u.size() + N * v.size();
            out.x = *digits_fixed(dpow(d, M) + h, d, M);
            out.y = repeat_digit(d, d - 1, v.size());
            out.z = canonical_rep(BigInt(value(w) - 1), d);
        }
        out.N = N;
    } else {
        size_t N = 0;
        for (;; ++N) {
            if (N > 100000) throw std::logic_error("translate_regex: no threshold found");
            Word uv = concat(u, power(v, N));
            BigInt t = g + value(uv);
            if (t >= 0 && t < dpow(d, uv.size())) {
                out.x = *digits_fixed(t, d, uv.size());
                break;
            }
        }
        out.y = v;
        out.z = w;
        out.N = N;
    }
    for (size_t k = 0; k < out.N; ++k) out.exceptions.push_back(elem(k));
    return out;
}

AutoSet coset_automaton(const BigInt& r, const BigInt& s, int d) {
    (void)Base{d};
    if (s < 1) throw std::invalid_argument("coset: modulus must be positive");
    BigInt target = pos_mod(r, s);
    Dfa A;
    A.base = d;
    A.alphabet = signed_alphabet(d, 1);
    std::map<std::pair<BigInt, BigInt>, int> id;
    std::vector<std::pair<BigInt, BigInt>> info;
    auto get = [&](const BigInt& val, const BigInt& p) {
        auto key = std::make_pair(val, p);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int q = A.add_state(val == target);
        id.emplace(key, q);
        info.push_back(key);
        return q;
    };
    A.start = get(0, pos_mod(BigInt(1), s));
    for (int q = 0; q < A.n; ++q) {
        auto [val, p] = info[q];
        for (int a = 0; a < A.k(); ++a) A.at(q, a) = get(pos_mod(val + p * A.alphabet[a][0], s), pos_mod(p * d, s));
    }
    return from_value_closed(A, d, 1);
}

FSetDescription FSetDescription::empty(int d, int dim) {
    FSetDescription F;
    F.kind = Kind::Union;
    F.d = d;
    F.dim = dim;
    return F;
}

FSetDescription FSetDescription::full(int d, int dim) {
    FSetDescription F = empty(d, dim);
    F.kind = Kind::Inter;
    return F;
}

FSetDescription FSetDescription::leaf(FTerm t, int d) {
    FSetDescription F;
    F.kind = Kind::Term;
    F.d = d;
    F.dim = (int)t.b.size();
    for (auto& c : t.cycles)
        if (c.a.size() != t.b.size() || c.d != d) throw std::invalid_argument("fset term: inconsistent cycle");
    F.term = std::move(t);
    return F;
}

FSetDescription FSetDescription::coset(BigInt r, BigInt s, int d) {
    if (s < 1) throw std::invalid_argument("coset: modulus must be positive");
    FSetDescription F;
    F.kind = Kind::Coset;
    F.d = d;
    F.r = pos_mod(r, s);
    F.s = std::move(s);
    return F;
}

static FSetDescription node(FSetDescription::Kind k, std::vector<FSetDescription> xs) {
    if (xs.size() == 1) return xs[0];
    if (xs.empty()) throw std::invalid_argument("fset node needs a base; use empty()/full()");
    FSetDescription F;
    F.kind = k;
    F.d = xs[0].d;
    F.dim = xs[0].dim;
    for (auto& x : xs) {
        if (x.d != F.d || x.dim != F.dim) throw std::invalid_argument("fset: base/dimension mismatch");
        // flatten same-kind children
        if (x.kind == k && !x.negated) {
            for (auto& y : x.kids) F.kids.push_back(y);
        } else {
            F.kids.push_back(x);
        }
    }
    return F;
}

FSetDescription FSetDescription::unite(std::vector<FSetDescription> xs) { return node(Kind::Union, std::move(xs)); }
FSetDescription FSetDescription::meet(std::vector<FSetDescription> xs) { return node(Kind::Inter, std::move(xs)); }

FSetDescription FSetDescription::from_groupless(const GrouplessFSet& g, int d, int dim) {
    if (g.components.empty()) return empty(d, dim);
    std::vector<FSetDescription> xs;
    for (auto& t : g.components) xs.push_back(leaf(t, d));
    return unite(xs);
}

FSetDescription FSetDescription::complemented() const {
    FSetDescription F = *this;
    switch (kind) {
        case Kind::Term:
        case Kind::Coset:
            F.negated = !negated;
            return F;
        case Kind::Union:
        case Kind::Inter:
            F.kind = kind == Kind::Union ? Kind::Inter : Kind::Union;
            for (auto& k : F.kids) k = k.complemented();
            return F;
    }
    return F;
}

FSetDescription FSetDescription::translated(const Tuple& c) const {
    if ((int)c.size() != dim) throw std::invalid_argument("fset translate: dimension mismatch");
    FSetDescription F = *this;
    switch (kind) {
        case Kind::Term:
            for (size_t i = 0; i < c.size(); ++i) F.term.b[i] += c[i];
            break;
        case Kind::Coset:
            F.r = pos_mod(F.r + c[0], F.s);
            break;
        default:
            for (auto& k : F.kids) k = k.translated(c);
    }
    return F;
}

static std::string tuple_text(const Tuple& t) {
    if (t.size() == 1) return t[0].str();
    return format_tuple(t);
}

std::string FSetDescription::str() const {
    std::string s;
    switch (kind) {
        case Kind::Term: {
            std::string sum;
            for (size_t i = 0; i < term.cycles.size(); ++i) {
                if (i) sum += " + ";
                sum += "C(" + tuple_text(term.cycles[i].a) + ";" + std::to_string(term.cycles[i].delta) + ")";
            }
            bool zero = std::all_of(term.b.begin(), term.b.end(), [](const BigInt& x) { return x == 0; });
            if (term.cycles.empty()) s = "{" + tuple_text(term.b) + "}";
            else if (zero) s = sum;
            else s = "trans(" + tuple_text(term.b) + ", " + sum + ")";
            break;
        }
        case Kind::Coset:
            s = "coset(" + r.str() + "," + this->s.str() + ")";
            break;
        case Kind::Union:
        case Kind::Inter: {
            if (kids.empty()) return kind == Kind::Union ? "{}" : "compl({})";
            s = kind == Kind::Union ? "union(" : "inter(";
            for (size_t i = 0; i < kids.size(); ++i) {
                if (i) s += ", ";
                s += kids[i].str();
            }
            s += ")";
            return s;
        }
    }
    return negated ? "compl(" + s + ")" : s;
}

size_t FSetDescription::leaf_count() const {
    if (kind == Kind::Term || kind == Kind::Coset) return 1;
    size_t n = 0;
    for (auto& k : kids) n += k.leaf_count();
    return n;
}

static AutoSet term_autoset(const FTerm& t, int d) {
    int dim = (int)t.b.size();
    if (t.cycles.empty()) return finite_set(std::vector<Tuple>{t.b}, d, dim);
    AutoSet S = cycle_autoset(t.cycles[0]);
    for (size_t i = 1; i < t.cycles.size(); ++i) S = minkowski_sum(S, cycle_autoset(t.cycles[i]));
    return translate(S, t.b);
}

AutoSet fset_to_autoset(const FSetDescription& F) {
    AutoSet S;
    switch (F.kind) {
        case FSetDescription::Kind::Term:
            S = term_autoset(F.term, F.d);
            break;
        case FSetDescription::Kind::Coset:
            if (F.dim != 1) throw std::invalid_argument("coset leaves are one-dimensional");
            S = coset_automaton(F.r, F.s, F.d);
            break;
        case FSetDescription::Kind::Union:
            S = empty_set(F.d, F.dim);
            for (auto& k : F.kids) S = set_union(S, fset_to_autoset(k));
            return S;
        case FSetDescription::Kind::Inter:
            S = full_set(F.d, F.dim);
            for (auto& k : F.kids) S = set_intersection(S, fset_to_autoset(k));
            return S;
    }
    return F.negated ? set_complement(S) : S;
}

AutoSet fset_to_autoset(const GrouplessFSet& G, int d, int dim) {
    return fset_to_autoset(FSetDescription::from_groupless(G, d, dim));
}

static bool term_member(const FTerm& t, const Tuple& x, const BigInt& cap) {
    size_t m = t.b.size();
    Tuple target(m);
    for (size_t i = 0; i < m; ++i) target[i] = x[i] - t.b[i];
    std::set<Tuple> sums{Tuple(m, BigInt(0))};
    for (auto& c : t.cycles) {
        std::vector<Tuple> el;
        Tuple cur = c.a;
        BigInt f = dpow(c.d, (size_t)c.delta);
        for (;;) {
            bool small = true;
            for (auto& y : cur) small = small && abs(y) <= cap;
            if (!small) break;
            el.push_back(cur);
            bool zero = std::all_of(c.a.begin(), c.a.end(), [](const BigInt& y) { return y == 0; });
            if (zero) break;
            for (size_t j = 0; j < m; ++j) cur[j] = c.a[j] + f * cur[j];
        }
        std::set<Tuple> nx;
        for (auto& s : sums)
            for (auto& e : el) {
                Tuple y(m);
                for (size_t j = 0; j < m; ++j) y[j] = s[j] + e[j];
                nx.insert(y);
            }
        sums = std::move(nx);
    }
    return sums.count(target) > 0;
}

bool fset_member(const FSetDescription& F, const Tuple& x, const BigInt& cap) {
    bool v = false;
    switch (F.kind) {
        case FSetDescription::Kind::Term:
            v = term_member(F.term, x, cap);
            break;
        case FSetDescription::Kind::Coset:
            v = pos_mod(x[0] - F.r, F.s) == 0;
            break;
        case FSetDescription::Kind::Union:
            for (auto& k : F.kids)
                if (fset_member(k, x, cap)) return true;
            return false;
        case FSetDescription::Kind::Inter:
            for (auto& k : F.kids)
                if (!fset_member(k, x, cap)) return false;
            return true;
    }
    return F.negated ? !v : v;
}

json to_json(const CycleSet& C) {
    return json{{"a", letter_to_json(C.a)}, {"delta", C.delta}};
}

static json tree_json(const FSetDescription& F) {
    json j;
    switch (F.kind) {
        case FSetDescription::Kind::Term: {
            j["kind"] = "term";
            j["b"] = letter_to_json(F.term.b);
            json cs = json::array();
            for (auto& c : F.term.cycles) cs.push_back(to_json(c));
            j["cycles"] = cs;
            break;
        }
        case FSetDescription::Kind::Coset:
            j["kind"] = "coset";
            j["r"] = big_to_json(F.r);
            j["s"] = big_to_json(F.s);
            break;
        default: {
            j["kind"] = F.kind == FSetDescription::Kind::Union ? "union" : "inter";
            json a = json::array();
            for (auto& k : F.kids) a.push_back(tree_json(k));
            j["args"] = a;
        }
    }
    if (F.negated) j["negated"] = true;
    return j;
}

json to_json(const FSetDescription& F) {
    return json{{"base", F.d}, {"dim", F.dim}, {"text", F.str()}, {"tree", tree_json(F)}};
}

static FSetDescription tree_from(const json& j, int d, int dim) {
    std::string k = j.at("kind").get<std::string>();
    FSetDescription F;
    if (k == "term") {
        FTerm t;
        t.b = letter_from_json(j.at("b"));
        for (auto& c : j.at("cycles")) t.cycles.push_back(CycleSet{letter_from_json(c.at("a")), c.at("delta").get<long long>(), d});
        F = FSetDescription::leaf(t, d);
    } else if (k == "coset") {
        F = FSetDescription::coset(big_from_json(j.at("r")), big_from_json(j.at("s")), d);
    } else if (k == "union" || k == "inter") {
        F = k == "union" ? FSetDescription::empty(d, dim) : FSetDescription::full(d, dim);
        for (auto& a : j.at("args")) F.kids.push_back(tree_from(a, d, dim));
    } else {
        throw std::invalid_argument("unknown fset node " + k);
    }
    F.negated = j.value("negated", false);
    return F;
}

FSetDescription fset_from_json(const json& j) {
    int d = j.at("base").get<int>(), dim = j.at("dim").get<int>();
    return tree_from(j.at("tree"), d, dim);
}

}  // namespace autostab
