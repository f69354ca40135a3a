#include "autostab/autoset.hpp"

#include "autostab/value_reader.hpp"

#include <algorithm>
#include <bit>
#include <random>

namespace autostab {

using nlohmann::json;

std::vector<Letter> signed_alphabet(int d, int dim) {
    std::vector<Letter> out;
    Letter cur(dim, BigInt(-(d - 1)));
    while (true) {
        out.push_back(cur);
        int i = dim - 1;
        while (i >= 0 && cur[i] == d - 1) {
            cur[i] = -(d - 1);
            --i;
        }
        if (i < 0) break;
        cur[i] += 1;
    }
    return out;
}

std::vector<Letter> digit_alphabet(int d, int dim) {
    std::vector<Letter> out;
    Letter cur(dim, BigInt(0));
    while (true) {
        out.push_back(cur);
        int i = dim - 1;
        while (i >= 0 && cur[i] == d - 1) {
            cur[i] = 0;
            --i;
        }
        if (i < 0) break;
        cur[i] += 1;
    }
    return out;
}

static int signed_index(const Letter& l, int d) {
    int idx = 0;
    for (auto& x : l) idx = idx * (2 * d - 1) + (int)x + d - 1;
    return idx;
}

bool AutoSet::member(const Tuple& a) const {
    if ((int)a.size() != dim) throw std::invalid_argument("member: dimension mismatch");
    Word w = canonical_rep(a, d);
    int q = dfa.start;
    for (auto& l : w.letters) q = dfa.next(q, signed_index(l, d));
    return dfa.final(q);
}

bool AutoSet::member(long long a) const {
    if (dim != 1) return member(Tuple{BigInt(a)});
    int q = dfa.start;
    bool neg = a < 0;
    unsigned long long x = neg ? 0ULL - (unsigned long long)a : (unsigned long long)a;
    while (x) {
        int digit = (int)(x % (unsigned long long)d);
        x /= (unsigned long long)d;
        q = dfa.next(q, (neg ? -digit : digit) + d - 1);
    }
    return dfa.final(q);
}

bool AutoSet::member(const BigInt& a) const {
    if (dim == 1 && a >= std::numeric_limits<long long>::min() && a <= std::numeric_limits<long long>::max())
        return member((long long)a);
    return member(Tuple{a});
}

AutoSet from_value_closed(const Dfa& dfa, int d, int dim) {
    if (dfa.alphabet != signed_alphabet(d, dim)) throw std::invalid_argument("recognizer alphabet must be Sigma_pm^m");
    AutoSet A;
    A.d = d;
    A.dim = dim;
    A.dfa = minimize(dfa);
    A.dfa.base = d;
    return A;
}

AutoSet value_closure(const Nfa& raw, int d, int dim) {
    for (auto& l : raw.alphabet)
        if ((int)l.size() != dim) throw std::invalid_argument("value_closure: letter dimension mismatch");
    ValueReader rd(raw, d, Tuple(dim, BigInt(0)), 0);
    Dfa D = rd.explore(signed_alphabet(d, dim));
    return from_value_closed(D, d, dim);
}

AutoSet value_closure(const Dfa& raw, int d, int dim) { return value_closure(to_nfa(raw), d, dim); }

AutoSet empty_set(int d, int dim) { return from_value_closed(empty_dfa(signed_alphabet(d, dim), d), d, dim); }

AutoSet full_set(int d, int dim) { return from_value_closed(universal_dfa(signed_alphabet(d, dim), d), d, dim); }

AutoSet finite_set(const std::vector<Tuple>& elems, int d, int dim) {
    Nfa N;
    N.base = d;
    N.alphabet = signed_alphabet(d, dim);
    for (auto& e : elems) {
        Word w = canonical_rep(e, d);
        int q = N.add_state(w.empty());
        N.starts.push_back(q);
        for (size_t i = 0; i < w.size(); ++i) {
            int t = N.add_state(i + 1 == w.size());
            N.at(q, signed_index(w[i], d)).push_back(t);
            q = t;
        }
    }
    if (N.n == 0) return empty_set(d, dim);
    return value_closure(N, d, dim);
}

AutoSet finite_set(const std::vector<BigInt>& elems, int d) {
    std::vector<Tuple> t;
    for (auto& e : elems) t.push_back(Tuple{e});
    return finite_set(t, d, 1);
}

static AutoSet sign_set(int d, bool want_nonneg) {
    Dfa A;
    A.base = d;
    A.alphabet = signed_alphabet(d, 1);
    int z = A.add_state(want_nonneg), p = A.add_state(want_nonneg), n = A.add_state(!want_nonneg);
    A.start = z;
    for (int q : {z, p, n})
        for (int a = 0; a < A.k(); ++a) {
            int v = a - (d - 1);
            A.at(q, a) = v > 0 ? p : v < 0 ? n : q;
        }
    return from_value_closed(A, d, 1);
}

AutoSet naturals(int d) { return sign_set(d, true); }
AutoSet negatives(int d) { return sign_set(d, false); }

static void check_pair(const AutoSet& A, const AutoSet& B) {
    if (A.d != B.d || A.dim != B.dim) throw std::invalid_argument("base/dimension mismatch");
}

AutoSet set_union(const AutoSet& A, const AutoSet& B) {
    check_pair(A, B);
    return from_value_closed(unite(A.dfa, B.dfa), A.d, A.dim);
}
AutoSet set_intersection(const AutoSet& A, const AutoSet& B) {
    check_pair(A, B);
    return from_value_closed(intersection(A.dfa, B.dfa), A.d, A.dim);
}
AutoSet set_difference(const AutoSet& A, const AutoSet& B) {
    check_pair(A, B);
    return from_value_closed(difference(A.dfa, B.dfa), A.d, A.dim);
}
AutoSet set_symdiff(const AutoSet& A, const AutoSet& B) {
    check_pair(A, B);
    return from_value_closed(symmetric_difference(A.dfa, B.dfa), A.d, A.dim);
}
AutoSet set_complement(const AutoSet& A) { return from_value_closed(complement(A.dfa), A.d, A.dim); }

AutoSet negate(const AutoSet& A) {
    Dfa B = A.dfa;
    int k = B.k();
    for (int q = 0; q < B.n; ++q)
        for (int a = 0; a < k; ++a) {
            Letter l = B.alphabet[a];
            for (auto& x : l) x = -x;
            B.at(q, a) = A.dfa.next(q, signed_index(l, A.d));
        }
    return from_value_closed(B, A.d, A.dim);
}

AutoSet translate(const AutoSet& A, const Tuple& c) {
    if ((int)c.size() != A.dim) throw std::invalid_argument("translate: dimension mismatch");
    bool zero = std::all_of(c.begin(), c.end(), [](const BigInt& x) { return x == 0; });
    if (zero) return A;
    Tuple off = c;
    for (auto& x : off) x = -x;
    ValueReader rd(A.dfa, A.d, off, 0);
    return from_value_closed(rd.explore(signed_alphabet(A.d, A.dim)), A.d, A.dim);
}

AutoSet translate(const AutoSet& A, const BigInt& c) { return translate(A, Tuple{c}); }

AutoSet minkowski_sum(const AutoSet& A, const AutoSet& B) {
    check_pair(A, B);
    int d = A.d, dim = A.dim;
    auto sig = signed_alphabet(d, dim);
    // sum letters range over [-2d+2, 2d-2]^m
    Nfa N;
    N.base = d;
    {
        Letter cur(dim, BigInt(-2 * d + 2));
        while (true) {
            N.alphabet.push_back(cur);
            int i = dim - 1;
            while (i >= 0 && cur[i] == 2 * d - 2) {
                cur[i] = -2 * d + 2;
                --i;
            }
            if (i < 0) break;
            cur[i] += 1;
        }
    }
    int W = 4 * d - 3;
    auto sum_index = [&](const Letter& a, const Letter& b) {
        int idx = 0;
        for (int i = 0; i < dim; ++i) idx = idx * W + (int)(a[i] + b[i]) + 2 * d - 2;
        return idx;
    };
    std::map<std::pair<int, int>, int> id;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int x, int y) {
        auto key = std::make_pair(x, y);
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int s = N.add_state(A.dfa.final(x) && B.dfa.final(y));
        id.emplace(key, s);
        pairs.push_back(key);
        return s;
    };
    N.starts.push_back(intern(A.dfa.start, B.dfa.start));
    int k = (int)sig.size();
    for (int s = 0; s < N.n; ++s) {
        auto [x, y] = pairs[s];
        for (int a = 0; a < k; ++a) {
            int xa = A.dfa.next(x, a);
            for (int b = 0; b < k; ++b) {
                int t = intern(xa, B.dfa.next(y, b));
                N.at(s, sum_index(sig[a], sig[b])).push_back(t);
            }
        }
    }
    for (auto& v : N.delta) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    ValueReader rd(N, d, Tuple(dim, BigInt(0)), 0);
    return from_value_closed(rd.explore(sig), d, dim);
}

bool set_equal(const AutoSet& A, const AutoSet& B) {
    check_pair(A, B);
    return equivalent(A.dfa, B.dfa);
}

bool set_empty(const AutoSet& A) { return is_empty(A.dfa); }

Dfa positive_language(const AutoSet& A) {
    if (A.dim != 1) throw std::invalid_argument("positive_language: dimension must be 1");
    std::vector<int> keep;
    for (int v = 0; v < A.d; ++v) keep.push_back(v + A.d - 1);
    return minimize(restrict_alphabet(A.dfa, keep, digit_alphabet(A.d, 1)));
}

Dfa negative_language(const AutoSet& A) {
    if (A.dim != 1) throw std::invalid_argument("negative_language: dimension must be 1");
    std::vector<int> keep;
    for (int v = 0; v < A.d; ++v) keep.push_back(-v + A.d - 1);
    return minimize(restrict_alphabet(A.dfa, keep, digit_alphabet(A.d, 1)));
}

Dfa canonical_filter(int d, int dim) {
    // state = (sign per component in {0,+,-}, last letter all-zero); plus a reject sink
    Dfa F;
    F.base = d;
    F.alphabet = signed_alphabet(d, dim);
    int nsig = 1;
    for (int i = 0; i < dim; ++i) nsig *= 3;
    int total = nsig * 2 + 1;
    for (int s = 0; s < total; ++s) F.add_state(false);
    int sink = total - 1;
    for (int s = 0; s < nsig * 2; ++s) F.fin[s] = (s % 2) == 0;
    F.start = 0;
    for (int s = 0; s < nsig * 2; ++s) {
        int sig = s / 2;
        for (int a = 0; a < F.k(); ++a) {
            const Letter& l = F.alphabet[a];
            std::vector<int> sg(dim);
            int x = sig;
            for (int i = 0; i < dim; ++i) {
                sg[i] = x % 3;
                x /= 3;
            }
            bool ok = true, allzero = true;
            for (int i = 0; i < dim; ++i) {
                int want = l[i] > 0 ? 1 : l[i] < 0 ? 2 : 0;
                if (want == 0) continue;
                allzero = false;
                if (sg[i] == 0) sg[i] = want;
                else if (sg[i] != want) ok = false;
            }
            if (!ok) {
                F.at(s, a) = sink;
                continue;
            }
            int ns = 0;
            for (int i = dim - 1; i >= 0; --i) ns = ns * 3 + sg[i];
            F.at(s, a) = ns * 2 + (allzero ? 1 : 0);
        }
    }
    return F;
}

Dfa canonical_language(const AutoSet& A) { return minimize(intersection(A.dfa, canonical_filter(A.d, A.dim))); }

static Dfa no_trailing_zero(int d) {
    Dfa F;
    F.base = d;
    F.alphabet = digit_alphabet(d, 1);
    int ok = F.add_state(true), z = F.add_state(false);
    F.start = ok;
    for (int q : {ok, z})
        for (int a = 0; a < d; ++a) F.at(q, a) = a == 0 ? z : ok;
    return F;
}

Dfa canonical_positive(const AutoSet& A) { return minimize(intersection(positive_language(A), no_trailing_zero(A.d))); }
Dfa canonical_negative(const AutoSet& A) { return minimize(intersection(negative_language(A), no_trailing_zero(A.d))); }

bool is_sparse_set(const AutoSet& A) { return sparse(canonical_language(A)); }

static bool lang_member(const Dfa& P, long long n, int d) {
    int q = P.start;
    while (n) {
        q = P.next(q, (int)(n % d));
        n /= d;
    }
    return P.final(q);
}

GenericityVerdict generic_in_N_language(const Dfa& P) {
    GenericityVerdict g;
    int d = P.base;
    g.witness = forbidden_suffix_witness(P);
    if (g.witness) {
        g.generic = false;
        return g;
    }
    g.generic = true;
    int p = pumping_length(P);
    long long X = 1;
    for (int i = 0; i < p + 2 && X < 1000000; ++i) X *= d;
    X = std::clamp(X, 10000LL, 1000000LL);
    long long hi = X + X / 2 + 64;
    while (true) {
        std::vector<char> in(hi + 1);
        for (long long n = 0; n <= hi; ++n) in[n] = lang_member(P, n, d);
        long long next = -1, G = 0;
        bool ok = true;
        for (long long n = hi; n >= 0; --n) {
            if (in[n]) next = n;
            if (n <= X) {
                if (next < 0) {
                    ok = false;
                    break;
                }
                G = std::max(G, next - n);
            }
        }
        if (ok) {
            g.max_gap = G;
            g.gap_range = X;
            break;
        }
        if (hi > 64 * X) throw std::runtime_error("generic_in_N: no element found above the scanned range");
        hi *= 2;
    }
    for (long long t = 0; t <= g.max_gap; ++t) g.offsets.push_back(-t);
    return g;
}

GenericityVerdict is_generic_in_N(const AutoSet& A) {
    if (A.dim != 1) throw std::invalid_argument("is_generic_in_N: dimension must be 1");
    if (!set_empty(set_intersection(A, negatives(A.d))))
        throw std::invalid_argument("is_generic_in_N: set is not contained in N");
    return generic_in_N_language(positive_language(A));
}

ZGenericity is_generic_in_Z(const AutoSet& A) {
    if (A.dim != 1) throw std::invalid_argument("is_generic_in_Z: dimension must be 1");
    ZGenericity z;
    z.pos = generic_in_N_language(positive_language(A));
    z.neg = generic_in_N_language(negative_language(A));
    z.generic = z.pos.generic && z.neg.generic;
    return z;
}

namespace {

struct Bits {
    std::vector<uint64_t> w;
    explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
    void set(size_t i) { w[i >> 6] |= 1ULL << (i & 63); }
    bool test(size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }
    size_t count() const {
        size_t c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
};

Bits band(const Bits& a, const Bits& b) {
    Bits r = a;
    for (size_t i = 0; i < r.w.size(); ++i) r.w[i] &= b.w[i];
    return r;
}

Bits bandnot(const Bits& a, const Bits& b) {
    Bits r = a;
    for (size_t i = 0; i < r.w.size(); ++i) r.w[i] &= ~b.w[i];
    return r;
}

}  // namespace

std::optional<Ladder> ladder_search(const std::function<bool(const BigInt&, const BigInt&)>& R,
                                    const std::vector<BigInt>& xs, const std::vector<BigInt>& ys, int N,
                                    long long node_limit, unsigned seed) {
    size_t nx = xs.size(), ny = ys.size();
    std::vector<Bits> rowbits(nx, Bits(ny)), colbits(ny, Bits(nx));
    for (size_t i = 0; i < nx; ++i)
        for (size_t j = 0; j < ny; ++j)
            if (R(xs[i], ys[j])) {
                rowbits[i].set(j);
                colbits[j].set(i);
            }
    std::vector<size_t> xorder(nx), yorder(ny);
    for (size_t i = 0; i < nx; ++i) xorder[i] = i;
    for (size_t j = 0; j < ny; ++j) yorder[j] = j;
    if (seed) {
        std::mt19937 rng(seed);
        std::shuffle(xorder.begin(), xorder.end(), rng);
        std::shuffle(yorder.begin(), yorder.end(), rng);
    }
    std::vector<size_t> ra, rb;
    long long nodes = 0;
    std::function<bool(int, const Bits&, const Bits&)> dfs = [&](int k, const Bits& CA, const Bits& CB) -> bool {
        if (k == N + 1) return true;
        for (size_t xi : xorder) {
            if (!CA.test(xi)) continue;
            if (++nodes > node_limit) return false;
            Bits CB1 = band(CB, rowbits[xi]);
            if ((int)CB1.count() < N - k + 1) continue;
            for (size_t yj : yorder) {
                if (!CB1.test(yj)) continue;
                if (++nodes > node_limit) return false;
                Bits CA1 = bandnot(CA, colbits[yj]);
                if ((int)CA1.count() < N - k) continue;
                ra.push_back(xi);
                rb.push_back(yj);
                if (dfs(k + 1, CA1, CB1)) return true;
                ra.pop_back();
                rb.pop_back();
            }
        }
        return false;
    };
    Bits all_x(nx), all_y(ny);
    for (size_t i = 0; i < nx; ++i) all_x.set(i);
    for (size_t j = 0; j < ny; ++j) all_y.set(j);
    if (!dfs(0, all_x, all_y)) return std::nullopt;
    std::vector<BigInt> a, b;
    for (auto i : ra) a.push_back(xs[i]);
    for (auto j : rb) b.push_back(ys[j]);
    return Ladder::plain(a, b);
}

std::optional<Ladder> ladder_search(const AutoSet& A, const LadderSearchOptions& opt) {
    if (A.dim != 1) throw std::invalid_argument("ladder_search: dimension must be 1");
    BigInt bound = opt.bound == 0 ? dpow(A.d, 12) : opt.bound;
    // pool: a small box, then signed digit multiples of powers of d and their neighbours
    std::vector<BigInt> pool;
    for (int v = -opt.small_box; v <= opt.small_box; ++v) pool.push_back(v);
    for (size_t k = 0;; ++k) {
        BigInt p = dpow(A.d, k);
        if (p > bound) break;
        for (int c = 1; c < A.d; ++c)
            for (int e = -1; e <= 1; ++e) {
                BigInt v = c * p + e;
                if (v > bound) continue;
                pool.push_back(v);
                pool.push_back(-v);
            }
    }
    std::sort(pool.begin(), pool.end(), [](const BigInt& x, const BigInt& y) {
        BigInt ax = abs(x), ay = abs(y);
        if (ax != ay) return ax < ay;
        return x > y;
    });
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    auto R = [&](const BigInt& x, const BigInt& y) { return A.member(BigInt(x + y)); };
    auto L = ladder_search(R, pool, pool, opt.N, opt.node_limit, opt.seed);
    if (!L) return std::nullopt;
    auto chk = verify_ladder(*L, [&](const Tuple& t) { return A.member(t); });
    if (!chk.ok) throw std::logic_error("ladder_search produced an invalid ladder");
    return L;
}

json to_json(const AutoSet& A) {
    json j;
    j["base"] = A.d;
    j["dim"] = A.dim;
    j["semantics"] = "value-closed";
    j["automaton"] = to_json(A.dfa);
    return j;
}

AutoSet autoset_from_json(const json& j) {
    int d = j.at("base").get<int>(), dim = j.at("dim").get<int>();
    if (j.value("semantics", std::string("value-closed")) != "value-closed")
        throw std::invalid_argument("unsupported set semantics");
    Dfa D = dfa_from_json(j.at("automaton"));
    D.base = d;
    return from_value_closed(D, d, dim);
}

}  // namespace autostab
