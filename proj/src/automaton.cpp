#include "autostab/automaton.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <unordered_map>

namespace autostab {

namespace {

struct VecHash {
    size_t operator()(const std::vector<int>& v) const {
        size_t h = v.size() * 0x9e3779b97f4a7c15ULL;
        for (int x : v) h ^= (size_t)x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

void check_same_alphabet(const Dfa& A, const Dfa& B) {
    if (A.alphabet != B.alphabet) throw std::invalid_argument("alphabet mismatch");
}

}  // namespace

int Dfa::add_state(bool f) {
    int q = n++;
    fin.push_back(f ? 1 : 0);
    for (int a = 0; a < k(); ++a) delta.push_back(q);
    return q;
}

int Dfa::run(int q, const IndexWord& w) const {
    for (int a : w) q = next(q, a);
    return q;
}

void Dfa::validate() const {
    if (n <= 0) throw std::invalid_argument("automaton needs at least one state");
    if (start < 0 || start >= n) throw std::invalid_argument("bad start state");
    if ((int)fin.size() != n) throw std::invalid_argument("finals size mismatch");
    if (delta.size() != (size_t)n * alphabet.size()) throw std::invalid_argument("transition table not total");
    for (int t : delta)
        if (t < 0 || t >= n) throw std::invalid_argument("transition target out of range");
}

int Nfa::add_state(bool f) {
    int q = n++;
    fin.push_back(f ? 1 : 0);
    for (int a = 0; a < k(); ++a) delta.emplace_back();
    return q;
}

bool Nfa::accepts(const IndexWord& w) const {
    std::vector<char> cur(n, 0);
    for (int s : starts) cur[s] = 1;
    for (int a : w) {
        std::vector<char> nx(n, 0);
        for (int q = 0; q < n; ++q)
            if (cur[q])
                for (int t : next(q, a)) nx[t] = 1;
        cur.swap(nx);
    }
    for (int q = 0; q < n; ++q)
        if (cur[q] && fin[q]) return true;
    return false;
}

LetterIndex::LetterIndex(const std::vector<Letter>& alphabet) {
    for (size_t i = 0; i < alphabet.size(); ++i) m_.emplace(alphabet[i], (int)i);
}

std::optional<int> LetterIndex::find(const Letter& l) const {
    auto it = m_.find(l);
    if (it == m_.end()) return std::nullopt;
    return it->second;
}

int LetterIndex::at(const Letter& l) const {
    auto r = find(l);
    if (!r) throw std::invalid_argument("letter " + format_letter(l) + " outside the alphabet");
    return *r;
}

IndexWord encode(const std::vector<Letter>& alphabet, const Word& w) {
    LetterIndex idx(alphabet);
    IndexWord r;
    r.reserve(w.size());
    for (auto& l : w.letters) r.push_back(idx.at(l));
    return r;
}

Word decode(const std::vector<Letter>& alphabet, const IndexWord& w, int d) {
    int dim = alphabet.empty() ? 1 : (int)alphabet[0].size();
    Word r(d, dim);
    for (int a : w) r.letters.push_back(alphabet[a]);
    return r;
}

bool accepts(const Dfa& A, const Word& w) { return A.accepts(encode(A.alphabet, w)); }

Nfa to_nfa(const Dfa& A) {
    Nfa N;
    N.base = A.base;
    N.alphabet = A.alphabet;
    N.n = A.n;
    N.starts = {A.start};
    N.fin = A.fin;
    N.delta.resize((size_t)A.n * A.k());
    for (int q = 0; q < A.n; ++q)
        for (int a = 0; a < A.k(); ++a) N.at(q, a) = {A.next(q, a)};
    return N;
}

Dfa determinize(const Nfa& N) {
    Dfa D;
    D.base = N.base;
    D.alphabet = N.alphabet;
    int k = N.k();
    std::unordered_map<std::vector<int>, int, VecHash> id;
    std::vector<std::vector<int>> sets;
    auto intern = [&](std::vector<int> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        bool f = false;
        for (int q : s) f = f || N.fin[q];
        int x = D.add_state(f);
        id.emplace(s, x);
        sets.push_back(std::move(s));
        return x;
    };
    D.start = intern(N.starts);
    std::vector<char> mark(N.n, 0);
    for (int x = 0; x < D.n; ++x) {
        for (int a = 0; a < k; ++a) {
            std::vector<int> t;
            for (int q : sets[x])
                for (int r : N.next(q, a))
                    if (!mark[r]) {
                        mark[r] = 1;
                        t.push_back(r);
                    }
            for (int r : t) mark[r] = 0;
            int y = intern(std::move(t));
            D.at(x, a) = y;
        }
    }
    return D;
}

std::vector<char> reachable_mask(const Dfa& A, int from) {
    std::vector<char> seen(A.n, 0);
    int s = from < 0 ? A.start : from;
    std::vector<int> st{s};
    seen[s] = 1;
    while (!st.empty()) {
        int q = st.back();
        st.pop_back();
        for (int a = 0; a < A.k(); ++a) {
            int t = A.next(q, a);
            if (!seen[t]) {
                seen[t] = 1;
                st.push_back(t);
            }
        }
    }
    return seen;
}

std::vector<char> coreachable_mask(const Dfa& A) {
    std::vector<std::vector<int>> inv(A.n);
    for (int q = 0; q < A.n; ++q)
        for (int a = 0; a < A.k(); ++a) inv[A.next(q, a)].push_back(q);
    std::vector<char> seen(A.n, 0);
    std::vector<int> st;
    for (int q = 0; q < A.n; ++q)
        if (A.final(q)) {
            seen[q] = 1;
            st.push_back(q);
        }
    while (!st.empty()) {
        int q = st.back();
        st.pop_back();
        for (int p : inv[q])
            if (!seen[p]) {
                seen[p] = 1;
                st.push_back(p);
            }
    }
    return seen;
}

std::vector<char> live_mask(const Dfa& A) {
    auto r = reachable_mask(A), c = coreachable_mask(A);
    for (int q = 0; q < A.n; ++q) r[q] = r[q] && c[q];
    return r;
}

// renumber the states in `keep` in BFS order from start; others collapse into a sink
static Dfa renumber_bfs(const Dfa& A, const std::vector<char>& keep) {
    Dfa B;
    B.base = A.base;
    B.alphabet = A.alphabet;
    int k = A.k();
    std::vector<int> id(A.n, -1);
    std::vector<int> order;
    int sink = -1;
    if (keep[A.start]) {
        id[A.start] = B.add_state(A.final(A.start));
        order.push_back(A.start);
        for (size_t i = 0; i < order.size(); ++i) {
            int q = order[i];
            for (int a = 0; a < k; ++a) {
                int t = A.next(q, a);
                if (keep[t] && id[t] < 0) {
                    id[t] = B.add_state(A.final(t));
                    order.push_back(t);
                }
            }
        }
    }
    auto get_sink = [&] {
        if (sink < 0) sink = B.add_state(false);
        return sink;
    };
    if (!keep[A.start]) {
        B.start = get_sink();
        return B;
    }
    B.start = 0;
    for (int q : order)
        for (int a = 0; a < k; ++a) {
            int t = A.next(q, a);
            B.at(id[q], a) = keep[t] ? id[t] : get_sink();
        }
    return B;
}

Dfa reachable_part(const Dfa& A) { return renumber_bfs(A, reachable_mask(A)); }

Dfa trim(const Dfa& A) { return renumber_bfs(A, live_mask(A)); }

Dfa minimize(const Dfa& A0) {
    Dfa A = reachable_part(A0);
    int n = A.n, k = A.k();
    // inverse transitions per letter
    std::vector<std::vector<std::vector<int>>> inv(k, std::vector<std::vector<int>>(n));
    for (int q = 0; q < n; ++q)
        for (int a = 0; a < k; ++a) inv[a][A.next(q, a)].push_back(q);

    std::vector<int> blk(n);
    std::vector<std::vector<int>> members;
    {
        std::vector<int> f, nf;
        for (int q = 0; q < n; ++q) (A.final(q) ? f : nf).push_back(q);
        if (!f.empty()) members.push_back(f);
        if (!nf.empty()) members.push_back(nf);
        for (size_t b = 0; b < members.size(); ++b)
            for (int q : members[b]) blk[q] = (int)b;
    }
    std::deque<std::pair<int, int>> work;
    std::vector<std::vector<char>> inW;   // [block][letter]
    auto add_work = [&](int b, int a) {
        if ((int)inW.size() <= b) inW.resize(b + 1, std::vector<char>(k, 0));
        if (!inW[b][a]) {
            inW[b][a] = 1;
            work.emplace_back(b, a);
        }
    };
    inW.assign(members.size(), std::vector<char>(k, 0));
    if (members.size() == 2) {
        int small = members[0].size() <= members[1].size() ? 0 : 1;
        for (int a = 0; a < k; ++a) add_work(small, a);
    }
    std::vector<int> cnt;
    std::vector<char> inX(n, 0);
    while (!work.empty()) {
        auto [B, a] = work.front();
        work.pop_front();
        inW[B][a] = 0;
        std::vector<int> X;
        for (int q : members[B])
            for (int p : inv[a][q])
                if (!inX[p]) {
                    inX[p] = 1;
                    X.push_back(p);
                }
        std::vector<int> touched;
        cnt.resize(members.size(), 0);
        for (int p : X) {
            int b = blk[p];
            if (cnt[b]++ == 0) touched.push_back(b);
        }
        std::sort(touched.begin(), touched.end());
        for (int Y : touched) {
            if (cnt[Y] < (int)members[Y].size()) {
                std::vector<int> in, out;
                for (int q : members[Y]) (inX[q] ? in : out).push_back(q);
                int Z = (int)members.size();
                // Y keeps the larger half
                if (in.size() <= out.size()) {
                    members[Y] = std::move(out);
                    members.push_back(std::move(in));
                } else {
                    members[Y] = std::move(in);
                    members.push_back(std::move(out));
                }
                for (int q : members[Z]) blk[q] = Z;
                cnt.push_back(0);
                inW.resize(members.size(), std::vector<char>(k, 0));
                for (int c = 0; c < k; ++c) {
                    if (inW[Y][c]) add_work(Z, c);
                    else add_work(Z, c);   // Z is the smaller half
                }
            }
            cnt[Y] = 0;
        }
        for (int p : X) inX[p] = 0;
    }
    // quotient, then canonical BFS numbering
    Dfa Q;
    Q.base = A.base;
    Q.alphabet = A.alphabet;
    int nb = (int)members.size();
    Q.n = nb;
    Q.fin.assign(nb, 0);
    Q.delta.assign((size_t)nb * k, 0);
    for (int b = 0; b < nb; ++b) {
        int rep = members[b][0];
        Q.fin[b] = A.fin[rep];
        for (int a = 0; a < k; ++a) Q.at(b, a) = blk[A.next(rep, a)];
    }
    Q.start = blk[A.start];
    return renumber_bfs(Q, std::vector<char>(nb, 1));
}

namespace {

template <class Op>
Dfa product(const Dfa& A, const Dfa& B, Op op) {
    check_same_alphabet(A, B);
    Dfa P;
    P.base = A.base;
    P.alphabet = A.alphabet;
    int k = A.k();
    std::unordered_map<long long, int> id;
    std::vector<std::pair<int, int>> pairs;
    auto intern = [&](int x, int y) {
        long long key = (long long)x * B.n + y;
        auto it = id.find(key);
        if (it != id.end()) return it->second;
        int s = P.add_state(op(A.final(x), B.final(y)));
        id.emplace(key, s);
        pairs.emplace_back(x, y);
        return s;
    };
    P.start = intern(A.start, B.start);
    for (int s = 0; s < P.n; ++s) {
        auto [x, y] = pairs[s];
        for (int a = 0; a < k; ++a) {
            int t = intern(A.next(x, a), B.next(y, a));
            P.at(s, a) = t;
        }
    }
    return P;
}

}  // namespace

Dfa complement(const Dfa& A) {
    Dfa C = A;
    for (auto& f : C.fin) f = !f;
    return C;
}

Dfa intersection(const Dfa& A, const Dfa& B) {
    return product(A, B, [](bool x, bool y) { return x && y; });
}
Dfa unite(const Dfa& A, const Dfa& B) {
    return product(A, B, [](bool x, bool y) { return x || y; });
}
Dfa difference(const Dfa& A, const Dfa& B) {
    return product(A, B, [](bool x, bool y) { return x && !y; });
}
Dfa symmetric_difference(const Dfa& A, const Dfa& B) {
    return product(A, B, [](bool x, bool y) { return x != y; });
}

bool is_empty(const Dfa& A) {
    auto r = reachable_mask(A);
    for (int q = 0; q < A.n; ++q)
        if (r[q] && A.final(q)) return false;
    return true;
}

bool equivalent(const Dfa& A, const Dfa& B) { return is_empty(symmetric_difference(A, B)); }

std::optional<IndexWord> shortest_path(const Dfa& A, int from, int to) {
    // BFS with ordered letters gives the lexicographically least shortest path
    std::vector<int> par(A.n, -2), via(A.n, -1);
    std::deque<int> dq{from};
    par[from] = -1;
    while (!dq.empty()) {
        int q = dq.front();
        dq.pop_front();
        if (q == to) break;
        for (int a = 0; a < A.k(); ++a) {
            int t = A.next(q, a);
            if (par[t] == -2) {
                par[t] = q;
                via[t] = a;
                dq.push_back(t);
            }
        }
    }
    if (par[to] == -2) return std::nullopt;
    IndexWord w;
    for (int q = to; par[q] != -1; q = par[q]) w.push_back(via[q]);
    std::reverse(w.begin(), w.end());
    return w;
}

std::optional<IndexWord> shortest_accepted(const Dfa& A, int from) {
    int s = from < 0 ? A.start : from;
    std::vector<int> par(A.n, -2), via(A.n, -1);
    std::deque<int> dq{s};
    par[s] = -1;
    while (!dq.empty()) {
        int q = dq.front();
        dq.pop_front();
        if (A.final(q)) {
            IndexWord w;
            for (int x = q; par[x] != -1; x = par[x]) w.push_back(via[x]);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (int a = 0; a < A.k(); ++a) {
            int t = A.next(q, a);
            if (par[t] == -2) {
                par[t] = q;
                via[t] = a;
                dq.push_back(t);
            }
        }
    }
    return std::nullopt;
}

std::optional<IndexWord> distinguishing_word(const Dfa& A, int p, int q) {
    int n = A.n;
    auto key = [n](int x, int y) { return (long long)x * n + y; };
    std::unordered_map<long long, std::pair<long long, int>> par;
    std::deque<std::pair<int, int>> dq{{p, q}};
    par[key(p, q)] = {-1, -1};
    while (!dq.empty()) {
        auto [x, y] = dq.front();
        dq.pop_front();
        if (A.final(x) != A.final(y)) {
            IndexWord w;
            long long c = key(x, y);
            while (par[c].first != -1) {
                w.push_back(par[c].second);
                c = par[c].first;
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (int a = 0; a < A.k(); ++a) {
            int x2 = A.next(x, a), y2 = A.next(y, a);
            long long c = key(x2, y2);
            if (!par.count(c)) {
                par[c] = {key(x, y), a};
                dq.emplace_back(x2, y2);
            }
        }
    }
    return std::nullopt;
}

BigInt count_words(const Dfa& A, size_t n) {
    std::vector<BigInt> cur(A.n, BigInt(0));
    cur[A.start] = 1;
    for (size_t i = 0; i < n; ++i) {
        std::vector<BigInt> nx(A.n, BigInt(0));
        for (int q = 0; q < A.n; ++q)
            if (cur[q] != 0)
                for (int a = 0; a < A.k(); ++a) nx[A.next(q, a)] += cur[q];
        cur.swap(nx);
    }
    BigInt total = 0;
    for (int q = 0; q < A.n; ++q)
        if (A.final(q)) total += cur[q];
    return total;
}

int pumping_length(const Dfa& A) {
    auto live = live_mask(A);
    return (int)std::count(live.begin(), live.end(), 1);
}

Pumped pump_decompose(const Dfa& A, const Word& w) {
    IndexWord iw = encode(A.alphabet, w);
    if (!A.accepts(iw)) throw std::invalid_argument("pump_decompose: word not accepted");
    int p = pumping_length(A);
    if ((int)iw.size() < p || iw.empty()) throw std::invalid_argument("pump_decompose: word shorter than pumping length");
    std::vector<int> firstpos(A.n, -1);
    int q = A.start;
    firstpos[q] = 0;
    for (size_t j = 1; j <= iw.size(); ++j) {
        q = A.next(q, iw[j - 1]);
        if (firstpos[q] >= 0) {
            size_t i = firstpos[q];
            Pumped r;
            r.u = Word(w.d, w.dim, {w.letters.begin(), w.letters.begin() + i});
            r.v = Word(w.d, w.dim, {w.letters.begin() + i, w.letters.begin() + j});
            r.w = Word(w.d, w.dim, {w.letters.begin() + j, w.letters.end()});
            return r;
        }
        firstpos[q] = (int)j;
    }
    throw std::logic_error("pump_decompose: no repeated state");
}

namespace {

// Tarjan SCC over the subgraph of states with mask set
std::vector<int> scc_ids(const Dfa& A, const std::vector<char>& mask, int& count) {
    int n = A.n, k = A.k();
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), st;
    std::vector<char> on(n, 0);
    int counter = 0;
    count = 0;
    struct Frame {
        int q, a;
    };
    for (int s = 0; s < n; ++s) {
        if (!mask[s] || idx[s] >= 0) continue;
        std::vector<Frame> stack{{s, 0}};
        idx[s] = low[s] = counter++;
        st.push_back(s);
        on[s] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.a < k) {
                int t = A.next(f.q, f.a++);
                if (!mask[t]) continue;
                if (idx[t] < 0) {
                    idx[t] = low[t] = counter++;
                    st.push_back(t);
                    on[t] = 1;
                    stack.push_back({t, 0});
                } else if (on[t]) {
                    low[f.q] = std::min(low[f.q], idx[t]);
                }
            } else {
                int q = f.q;
                stack.pop_back();
                if (!stack.empty()) low[stack.back().q] = std::min(low[stack.back().q], low[q]);
                if (low[q] == idx[q]) {
                    while (true) {
                        int x = st.back();
                        st.pop_back();
                        on[x] = 0;
                        comp[x] = count;
                        if (x == q) break;
                    }
                    ++count;
                }
            }
        }
    }
    return comp;
}

Word idx_word(const Dfa& A, const IndexWord& w) { return decode(A.alphabet, w, A.base); }

}  // namespace

SparsityVerdict is_sparse(const Dfa& A) {
    auto live = live_mask(A);
    int k = A.k();
    int dim = A.alphabet.empty() ? 1 : (int)A.alphabet[0].size();
    if (!live[A.start]) return Sparse{};
    int nc = 0;
    auto comp = scc_ids(A, live, nc);
    std::vector<int> edges(nc, 0), size(nc, 0);
    for (int q = 0; q < A.n; ++q) {
        if (!live[q]) continue;
        ++size[comp[q]];
        for (int a = 0; a < k; ++a) {
            int t = A.next(q, a);
            if (live[t] && comp[t] == comp[q]) ++edges[comp[q]];
        }
    }
    // non-sparse: some component has more internal edges than states
    for (int q = 0; q < A.n; ++q) {
        if (!live[q] || edges[comp[q]] <= size[comp[q]]) continue;
        std::vector<int> out;
        for (int a = 0; a < k; ++a) {
            int t = A.next(q, a);
            if (live[t] && comp[t] == comp[q]) out.push_back(a);
        }
        if (out.size() < 2) continue;
        auto cyc = [&](int a) {
            IndexWord c{a};
            auto back = shortest_path(A, A.next(q, a), q);
            c.insert(c.end(), back->begin(), back->end());
            return c;
        };
        IndexWord c1 = cyc(out[0]), c2 = cyc(out[1]);
        size_t L = std::lcm(c1.size(), c2.size());
        IndexWord y1, y2;
        for (size_t i = 0; i < L / c1.size(); ++i) y1.insert(y1.end(), c1.begin(), c1.end());
        for (size_t i = 0; i < L / c2.size(); ++i) y2.insert(y2.end(), c2.begin(), c2.end());
        NotSparse ns;
        ns.state = q;
        ns.x = idx_word(A, *shortest_path(A, A.start, q));
        ns.y1 = idx_word(A, y1);
        ns.y2 = idx_word(A, y2);
        ns.z = idx_word(A, *shortest_accepted(A, q));
        return ns;
    }
    // sparse: enumerate skeletons
    Sparse sp;
    std::vector<int> succ_in(A.n, -1);   // the unique in-component successor letter
    for (int q = 0; q < A.n; ++q) {
        if (!live[q] || edges[comp[q]] == 0) continue;
        for (int a = 0; a < k; ++a) {
            int t = A.next(q, a);
            if (live[t] && comp[t] == comp[q]) succ_in[q] = a;
        }
    }
    std::vector<IndexWord> us, ws;
    std::function<void(int, IndexWord)> go = [&](int x, IndexWord ucur) {
        std::vector<std::pair<int, IndexWord>> exits;   // (state y, path from x to y)
        bool cyclic = edges[comp[x]] > 0;
        if (cyclic) {
            IndexWord cw;
            int y = x;
            do {
                int a = succ_in[y];
                cw.push_back(a);
                y = A.next(y, a);
            } while (y != x);
            us.push_back(ucur);
            ws.push_back(cw);
            IndexWord path;
            y = x;
            for (size_t i = 0; i < cw.size(); ++i) {
                exits.emplace_back(y, path);
                path.push_back(cw[i]);
                y = A.next(y, cw[i]);
            }
        } else {
            exits.emplace_back(x, ucur);
        }
        for (auto& [y, p] : exits) {
            if (A.final(y)) {
                BoundedExpr e;
                for (auto& u : us) e.u.push_back(idx_word(A, u));
                e.u.push_back(idx_word(A, p));
                for (auto& w : ws) e.w.push_back(idx_word(A, w));
                sp.components.push_back(std::move(e));
            }
            for (int a = 0; a < k; ++a) {
                int t = A.next(y, a);
                if (!live[t] || comp[t] == comp[y]) continue;
                IndexWord np = p;
                np.push_back(a);
                go(t, np);
            }
        }
        if (cyclic) {
            us.pop_back();
            ws.pop_back();
        }
    };
    go(A.start, {});
    (void)dim;
    return sp;
}

bool sparse(const Dfa& A) { return std::holds_alternative<Sparse>(is_sparse(A)); }

Dfa loop_language(const Dfa& A, int q) {
    if (q < 0 || q >= A.n) throw std::invalid_argument("loop_language: unknown state");
    Dfa L = A;
    L.start = q;
    L.fin.assign(A.n, 0);
    L.fin[q] = 1;
    return L;
}

std::optional<SuffixWitness> forbidden_suffix_witness(const Dfa& A) {
    int d = A.base;
    int k = A.k();
    // alphabet must be exactly the digits 0..d-1
    std::vector<int> digit_of(k, -1);
    std::vector<int> idx_of(d, -1);
    for (int a = 0; a < k; ++a) {
        if (A.alphabet[a].size() != 1) throw std::invalid_argument("forbidden_suffix_witness: alphabet must be one-dimensional");
        const BigInt& x = A.alphabet[a][0];
        if (x < 0 || x >= d) throw std::invalid_argument("forbidden_suffix_witness: alphabet must be nonnegative digits");
        int v = (int)x;
        if (idx_of[v] >= 0) throw std::invalid_argument("forbidden_suffix_witness: repeated letter");
        idx_of[v] = a;
        digit_of[a] = v;
    }
    for (int v = 0; v < d; ++v)
        if (idx_of[v] < 0) throw std::invalid_argument("forbidden_suffix_witness: alphabet must be all of Sigma");

    // separator language S over digits + '$' (index d): 0^m $ tau with Sigma^m tau disjoint from L.
    // phase-1 states are subsets {delta(q0, x) : |x| = m}; phase-2 subsets follow tau.
    Dfa S;
    S.base = d;
    for (int v = 0; v < d; ++v) S.alphabet.push_back(Letter{BigInt(v)});
    S.alphabet.push_back(Letter{BigInt(d)});   // reserved separator, never a digit
    int dollar = d;
    std::unordered_map<std::vector<int>, int, VecHash> id1, id2;
    std::vector<std::pair<int, std::vector<int>>> info;   // (phase, subset)
    int reject = S.add_state(false);
    info.push_back({0, {}});
    auto intern = [&](int phase, std::vector<int> s) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        auto& id = phase == 1 ? id1 : id2;
        auto it = id.find(s);
        if (it != id.end()) return it->second;
        bool acc = false;
        if (phase == 2) {
            acc = true;
            for (int q : s)
                if (A.final(q)) acc = false;
        }
        int x = S.add_state(acc);
        id.emplace(s, x);
        info.push_back({phase, s});
        return x;
    };
    S.start = intern(1, {A.start});
    for (int x = 1; x < S.n; ++x) {
        auto [phase, set] = info[x];
        for (int v = 0; v <= d; ++v) {
            int t = reject;
            if (phase == 1) {
                if (v == 0) {
                    std::vector<int> nx;
                    for (int q : set)
                        for (int a = 0; a < k; ++a) nx.push_back(A.next(q, a));
                    t = intern(1, nx);
                } else if (v == dollar) {
                    t = intern(2, set);
                }
            } else if (v != dollar) {
                std::vector<int> nx;
                for (int q : set) nx.push_back(A.next(q, idx_of[v]));
                t = intern(2, nx);
            }
            S.at(x, v) = t;
        }
    }
    Dfa Sm = minimize(S);
    int p = pumping_length(Sm);
    if (p == 0) return std::nullopt;
    // shortest, lexicographically least word of S with at least p leading zeroes
    // product state: (S-state, zeros counted up to p, seen $)
    int n = Sm.n;
    auto enc = [&](int s, int c, int seen) { return (s * (p + 1) + c) * 2 + seen; };
    int total = n * (p + 1) * 2;
    std::vector<int> par(total, -2), via(total, -1);
    std::deque<int> dq;
    int st = enc(Sm.start, 0, 0);
    par[st] = -1;
    dq.push_back(st);
    int goal = -1;
    while (!dq.empty()) {
        int cur = dq.front();
        dq.pop_front();
        int seen = cur % 2, c = (cur / 2) % (p + 1), s = cur / 2 / (p + 1);
        if (seen && c >= p && Sm.final(s)) {
            goal = cur;
            break;
        }
        for (int v = 0; v <= d; ++v) {
            int nxt;
            if (!seen) {
                if (v == 0) nxt = enc(Sm.next(s, v), std::min(c + 1, p), 0);
                else if (v == dollar) nxt = enc(Sm.next(s, v), c, 1);
                else continue;
            } else {
                if (v == dollar) continue;
                nxt = enc(Sm.next(s, v), c, 1);
            }
            if (par[nxt] == -2) {
                par[nxt] = cur;
                via[nxt] = v;
                dq.push_back(nxt);
            }
        }
    }
    if (goal < 0) return std::nullopt;
    std::vector<int> word;
    for (int x = goal; par[x] != -1; x = par[x]) word.push_back(via[x]);
    std::reverse(word.begin(), word.end());
    size_t m = 0;
    while (word[m] == 0) ++m;   // word = 0^m $ tau
    Word tau(d, 1);
    for (size_t i = m + 1; i < word.size(); ++i) tau.push(Letter{BigInt(word[i])});
    // pump the 0^m prefix on the minimal S automaton: first repeated state
    std::vector<int> firstpos(Sm.n, -1);
    int q = Sm.start;
    firstpos[q] = 0;
    long long s_len = 0;
    for (size_t j = 1; j <= m; ++j) {
        q = Sm.next(q, 0);
        if (firstpos[q] >= 0) {
            s_len = (long long)j - firstpos[q];
            break;
        }
        firstpos[q] = (int)j;
    }
    if (s_len == 0) throw std::logic_error("forbidden_suffix_witness: pumping failed");
    SuffixWitness w;
    w.s = s_len;
    w.r = (long long)m - s_len + (long long)tau.size();
    w.tau = tau;
    return w;
}

Dfa restrict_alphabet(const Dfa& A, const std::vector<int>& keep, std::vector<Letter> relabel) {
    if (keep.size() != relabel.size()) throw std::invalid_argument("restrict_alphabet: size mismatch");
    Dfa B;
    B.base = A.base;
    B.alphabet = std::move(relabel);
    B.n = A.n;
    B.start = A.start;
    B.fin = A.fin;
    B.delta.resize((size_t)A.n * keep.size());
    for (int q = 0; q < A.n; ++q)
        for (size_t i = 0; i < keep.size(); ++i) B.at(q, (int)i) = A.next(q, keep[i]);
    return B;
}

Dfa relabel(const Dfa& A, std::vector<Letter> letters) {
    if ((int)letters.size() != A.k()) throw std::invalid_argument("relabel: size mismatch");
    Dfa B = A;
    B.alphabet = std::move(letters);
    return B;
}

Dfa with_start(const Dfa& A, int q) {
    Dfa B = A;
    B.start = q;
    return B;
}

Dfa with_finals(const Dfa& A, const std::vector<char>& fin) {
    Dfa B = A;
    B.fin = fin;
    return B;
}

Dfa universal_dfa(const std::vector<Letter>& alphabet, int base) {
    Dfa A;
    A.base = base;
    A.alphabet = alphabet;
    A.start = A.add_state(true);
    return A;
}

Dfa empty_dfa(const std::vector<Letter>& alphabet, int base) {
    Dfa A;
    A.base = base;
    A.alphabet = alphabet;
    A.start = A.add_state(false);
    return A;
}

}  // namespace autostab
