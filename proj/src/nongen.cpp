#include "autostab/nongen.hpp"

#include <numeric>

namespace autostab {

namespace {

using Dg = std::vector<int>;   // digits, least significant first

Dg cat(const Dg& a, const Dg& b) {
    Dg r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Dg rep(const Dg& a, size_t n) {
    Dg r;
    for (size_t i = 0; i < n; ++i) r.insert(r.end(), a.begin(), a.end());
    return r;
}

BigInt val(const Dg& a, int d) {
    BigInt v = 0;
    for (size_t i = a.size(); i-- > 0;) v = v * d + a[i];
    return v;
}

Dg to_digits(const Dfa& A, const IndexWord& w) {
    Dg r;
    for (int a : w) r.push_back((int)A.alphabet[(size_t)a][0]);
    return r;
}

Dg to_digits(const Word& w) {
    Dg r;
    for (auto& l : w.letters) r.push_back((int)l[0]);
    return r;
}

Word to_word(const Dg& a, int d) {
    Word w(d, 1);
    for (int x : a) w.push(Letter{BigInt(x)});
    return w;
}

std::vector<int> index_of_digit(const Dfa& A) {
    std::vector<int> idx((size_t)A.base, -1);
    for (int a = 0; a < A.k(); ++a) {
        if (A.alphabet[(size_t)a].size() != 1) throw std::invalid_argument("nongen: alphabet must be one-dimensional");
        long long v = (long long)A.alphabet[(size_t)a][0];
        if (v < 0 || v >= A.base) throw std::invalid_argument("nongen: alphabet must be digits");
        idx[(size_t)v] = a;
    }
    for (int x : idx)
        if (x < 0) throw std::invalid_argument("nongen: alphabet must contain every digit");
    return idx;
}

// words whose length lies in r + sN
Dfa length_class(const Dfa& like, long long r, long long s) {
    Dfa C;
    C.base = like.base;
    C.alphabet = like.alphabet;
    long long n = r + s;
    for (long long c = 0; c < n; ++c) C.add_state(c == r);
    for (long long c = 0; c < n; ++c)
        for (int a = 0; a < C.k(); ++a) C.at((int)c, a) = (int)(c + 1 < n ? c + 1 : r);
    C.start = 0;
    return C;
}

// Sigma* a
Dfa suffix_dfa(const Dfa& like, const Dg& a) {
    auto idx = index_of_digit(like);
    Nfa X;
    X.base = like.base;
    X.alphabet = like.alphabet;
    for (size_t i = 0; i <= a.size(); ++i) X.add_state(i == a.size());
    X.starts = {0};
    for (int c = 0; c < X.k(); ++c) X.at(0, c).push_back(0);
    for (size_t i = 0; i < a.size(); ++i) X.at((int)i, idx[(size_t)a[i]]).push_back((int)i + 1);
    return determinize(X);
}

bool infinite(const Dfa& A) {
    Dfa T = trim(A);
    if (T.n == 0) return false;
    for (int len = T.n; len < 2 * T.n; ++len)
        if (count_words(T, (size_t)len) > 0) return true;
    return false;
}

// elements of La that are value-maximal (want = +1) or minimal (-1) among same-length elements of La
Dfa extremal(const Dfa& La, int want) {
    int d = La.base;
    Nfa T;
    T.base = d;
    T.alphabet = La.alphabet;
    // state p*3 + c, c: 0 equal so far, 1 other larger, 2 other smaller
    for (int p = 0; p < La.n; ++p)
        for (int c = 0; c < 3; ++c) T.add_state(La.final(p) && c == (want > 0 ? 1 : 2));
    T.starts = {La.start * 3};
    for (int p = 0; p < La.n; ++p)
        for (int c = 0; c < 3; ++c)
            for (int x = 0; x < La.k(); ++x) {
                int dx = (int)La.alphabet[(size_t)x][0];
                for (int y = 0; y < La.k(); ++y) {
                    int dy = (int)La.alphabet[(size_t)y][0];
                    int c2 = dy > dx ? 1 : dy < dx ? 2 : c;
                    T.at(p * 3 + c, x).push_back(La.next(p, y) * 3 + c2);
                }
            }
    return minimize(intersection(La, complement(determinize(T))));
}

struct Pump {
    Dg u, v, w;
};

std::optional<Pump> find_pump(const Dfa& S) {
    auto live = live_mask(S);
    for (int p = 0; p < S.n; ++p) {
        if (!live[(size_t)p]) continue;
        for (int a = 0; a < S.k(); ++a) {
            int t = S.next(p, a);
            if (!live[(size_t)t]) continue;
            auto back = shortest_path(S, t, p);
            if (!back) continue;
            auto u = shortest_path(S, S.start, p);
            auto w = shortest_accepted(S, p);
            if (!u || !w) continue;
            IndexWord cyc{a};
            cyc.insert(cyc.end(), back->begin(), back->end());
            return Pump{to_digits(S, *u), to_digits(S, cyc), to_digits(S, *w)};
        }
    }
    return std::nullopt;
}

// sum_{t < k} x d^{l t}
BigInt repeat_value(const BigInt& x, int d, size_t l, size_t k) {
    BigInt s = 0, f = 1, step = dpow(d, l);
    for (size_t t = 0; t < k; ++t) {
        s += x * f;
        f *= step;
    }
    return s;
}

}  // namespace

LadderCheck check_nongen(const Dfa& L, const NongenLadder& g) {
    LadderCheck c;
    c.ok = (int)g.d.size() == g.N + 1 && (int)g.e.size() == g.N + 1;
    if (!c.ok) return c;
    c.bits.assign((size_t)g.N + 1, std::vector<char>((size_t)g.N + 1, 0));
    for (int i = 0; i <= g.N; ++i)
        for (int j = 0; j <= g.N; ++j) {
            BigInt sum = g.d[(size_t)i] + g.e[(size_t)j];
            auto w = sum < 0 ? std::nullopt : digits_fixed(sum, L.base, g.K);
            if (!w) {
                c.ok = false;
                continue;
            }
            bool in = accepts(L, *w);
            c.bits[(size_t)i][(size_t)j] = in;
            if (in != (i <= j)) c.ok = false;
        }
    return c;
}

std::optional<NongenLadder> nongen_ladder(const Dfa& L, const SuffixWitness& wit, int N, std::string* why) {
    auto no = [&](const char* m) -> std::optional<NongenLadder> {
        if (why) *why = m;
        return std::nullopt;
    };
    int d = L.base;
    index_of_digit(L);
    Dg tau = to_digits(wit.tau);
    size_t k = tau.size();
    if (k == 0 || wit.s < 1) return no("empty suffix");
    long long s = wit.s, r = wit.r;
    if (r < 0) r += s * ((-r + s - 1) / s);
    if (k > 24 || dpow(d, k) > 4000000) return no("suffix too long to enumerate");

    Dfa cls = length_class(L, r, s);
    Dfa P = intersection(L, cls);
    if (!infinite(P)) return no("length class is finite");

    // states of P reached by some prefix; a occurs iff one of them reads a into acceptance
    auto reach = reachable_mask(P);
    std::vector<int> R;
    for (int p = 0; p < P.n; ++p)
        if (reach[(size_t)p]) R.push_back(p);
    auto idx = index_of_digit(P);
    auto occurs = [&](const Dg& a) {
        for (int p : R) {
            int q = p;
            for (int x : a) q = P.next(q, idx[(size_t)x]);
            if (P.final(q)) return true;
        }
        return false;
    };
    auto digits_of = [&](long long v) {
        Dg a(k, 0);
        for (size_t i = 0; i < k; ++i) {
            a[i] = (int)(v % d);
            v /= d;
        }
        return a;
    };
    long long tv = (long long)val(tau, d), top = (long long)dpow(d, k);
    int want = 0;
    Dg a;
    for (long long v = tv - 1; v >= 0 && !want; --v)
        if (occurs(digits_of(v))) {
            a = digits_of(v);
            want = 1;
        }
    for (long long v = tv + 1; v < top && !want; ++v)
        if (occurs(digits_of(v))) {
            a = digits_of(v);
            want = -1;
        }
    if (!want) return no("no suffix of the right length occurs");

    Dfa La = minimize(intersection(P, suffix_dfa(L, a)));
    Dfa S = extremal(La, want);
    auto pump = find_pump(S);
    if (!pump) return no("extremal set is finite");
    Dg u = pump->u, v = pump->v, w = pump->w;
    while (w.size() < k) w = cat(v, w);

    NongenLadder g;
    g.N = N;
    g.a = to_word(a, d);
    Dg wu = cat(w, u);
    size_t gg = std::gcd(v.size(), wu.size());
    size_t n = v.size() / gg, m = wu.size() / gg;
    BigInt X = val(rep(wu, n), d), Y = val(rep(v, m), d);
    size_t l = m * v.size();
    bool strict = want > 0 ? X < Y : X > Y;
    if (strict) {
        BigInt alpha = want > 0 ? Y - X : X - Y;
        g.K = u.size() + (size_t)N * l + w.size();
        BigInt D = dpow(d, u.size() + (size_t)N * l);
        for (int i = 0; i <= N; ++i) {
            BigInt di = val(cat(cat(u, rep(wu, n * (size_t)(N - i))), cat(rep(v, m * (size_t)i), w)), d);
            BigInt ei = dpow(d, u.size()) * repeat_value(alpha, d, l, (size_t)(N - i));
            if (want > 0) {
                g.d.push_back(di);
                g.e.push_back(ei);
            } else {
                g.d.push_back(di - D);
                g.e.push_back(D - ei);
            }
        }
        g.branch = want > 0 ? "strict" : "dual-strict";
    } else {
        if (X != Y) return no("cycle comparison has the wrong sign");
        // u = empty, v = (uw)^n, w = uw
        Dg uw = cat(u, w);
        Dg v2 = rep(uw, n), w2 = uw;
        auto ns = is_sparse(L);
        if (!std::holds_alternative<NotSparse>(ns)) return no("language is sparse");
        const auto& z = std::get<NotSparse>(ns);
        Dg b = cat(cat(to_digits(z.x), to_digits(z.y1)), to_digits(z.z));
        Dg c = cat(cat(to_digits(z.x), to_digits(z.y2)), to_digits(z.z));
        size_t ll = std::lcm(b.size(), v2.size());
        b = rep(b, ll / b.size());
        c = rep(c, ll / c.size());
        Dg vv = rep(v2, ll / v2.size());
        if (b == vv) b = c;
        BigInt bv = val(b, d), vvv = val(vv, d);
        if (want > 0 ? !(bv < vvv) : !(bv > vvv)) return no("second word compares the wrong way");
        BigInt alpha = want > 0 ? vvv - bv : bv - vvv;
        g.K = (size_t)N * ll + w2.size();
        BigInt D = dpow(d, (size_t)N * ll);
        for (int i = 0; i <= N; ++i) {
            BigInt di = val(cat(cat(rep(b, (size_t)(N - i)), rep(vv, (size_t)i)), w2), d);
            BigInt ei = repeat_value(alpha, d, ll, (size_t)(N - i));
            if (want > 0) {
                g.d.push_back(di);
                g.e.push_back(ei);
            } else {
                g.d.push_back(di - D);
                g.e.push_back(D - ei);
            }
        }
        g.branch = want > 0 ? "equal" : "dual-equal";
    }
    if (!check_nongen(L, g).ok) return no("ladder failed verification");
    return g;
}

std::optional<StateChoice> choose_state(const Dfa& M) {
    int d = M.base;
    auto wit = forbidden_suffix_witness(M);
    auto live = live_mask(M);
    std::vector<char> nonsparse((size_t)M.n, 0);
    for (int q = 0; q < M.n; ++q)
        if (live[(size_t)q]) nonsparse[(size_t)q] = !sparse(loop_language(M, q));

    // a final state: the representation language is closed under dropping trailing zeros,
    // so tau 0^t stays forbidden at lengths r + t + sN
    if (wit) {
        for (int q = 0; q < M.n; ++q) {
            if (!nonsparse[(size_t)q] || !M.final(q)) continue;
            auto mu = shortest_path(M, M.start, q);
            if (!mu) continue;
            Dfa Lq = loop_language(M, q);
            long long s = wit->s;
            for (long long t = 0; t < s; ++t) {
                long long lo = wit->r + t - (long long)mu->size();
                long long rq = lo < 0 ? pos_mod(lo, s) : lo;
                if (!infinite(intersection(Lq, length_class(Lq, rq, s)))) continue;
                StateChoice c;
                c.q = q;
                c.mu = decode(M.alphabet, *mu, d);
                c.witness.r = rq;
                c.witness.s = s;
                c.witness.tau = concat(wit->tau, zeros(d, 1, (size_t)t));
                c.route = "final-state";
                return c;
            }
        }
    }
    // otherwise a finish state reachable from q has a sparse loop language and cannot return to q;
    // walking every state that reaches q into it gives a forbidden infix
    for (int q = 0; q < M.n; ++q) {
        if (!nonsparse[(size_t)q]) continue;
        auto mu = shortest_path(M, M.start, q);
        if (!mu) continue;
        auto from_q = reachable_mask(M, q);
        int q2 = -1;
        for (int p = 0; p < M.n && q2 < 0; ++p)
            if (from_q[(size_t)p] && M.final(p) && !reachable_mask(M, p)[(size_t)q]) q2 = p;
        if (q2 < 0) continue;
        IndexWord tau;
        for (int p = 0; p < M.n; ++p) {
            if (!reachable_mask(M, p)[(size_t)q]) continue;
            int cur = M.run(p, tau);
            if (!reachable_mask(M, cur)[(size_t)q]) continue;
            auto step = shortest_path(M, cur, q2);
            if (!step) return std::nullopt;
            tau.insert(tau.end(), step->begin(), step->end());
        }
        StateChoice c;
        c.q = q;
        c.mu = decode(M.alphabet, *mu, d);
        c.witness.r = 0;
        c.witness.s = 1;
        c.witness.tau = decode(M.alphabet, tau, d);
        c.route = "forbidden-infix";
        return c;
    }
    return std::nullopt;
}

Ladder phi_ladder(const Dfa& M, const StateChoice& c, const NongenLadder& g) {
    int d = M.base;
    size_t lm = c.mu.size();
    BigInt mu = value(c.mu);
    BigInt shift_mu = dpow(d, lm), shift_k = dpow(d, lm + g.K);
    std::vector<BigInt> sig;
    std::vector<Relation> atoms;
    for (int p = 0; p < M.n; ++p) {
        if (p == c.q) continue;
        auto s = distinguishing_word(M, c.q, p);
        if (!s) throw std::logic_error("phi_ladder: automaton is not minimal");
        int row = (int)sig.size();
        sig.push_back(value(decode(M.alphabet, *s, d)));
        bool eps = M.final(M.run(c.q, *s));
        atoms.push_back(eps ? Relation::atom(row, 0) : Relation::neg(Relation::atom(row, 0)));
    }
    Ladder L;
    L.N = g.N;
    for (int i = 0; i <= g.N; ++i) {
        std::vector<Tuple> row;
        for (auto& s : sig) row.push_back(Tuple{mu + shift_mu * g.d[(size_t)i] + shift_k * s});
        L.rows.push_back(row);
        L.cols.push_back({Tuple{shift_mu * g.e[(size_t)i]}});
    }
    L.relation = atoms.size() == 1 ? atoms[0] : Relation::all(atoms);
    return L;
}

}  // namespace autostab
