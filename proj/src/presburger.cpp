#include "autostab/presburger.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace autostab {

using nlohmann::json;

int Machine::run(int q, const Word& w) {
    for (const auto& l : w.letters) q = step(q, l);
    return q;
}

DfaMachine::DfaMachine(const Dfa& A) : A_(A), idx_(A.alphabet) {}

int DfaMachine::step(int q, const Letter& l) { return A_.next(q, idx_.at(l)); }

ReaderMachine::ReaderMachine(const AutoSet& A, Tuple offset, size_t shift)
    : r_(A.dfa, A.d, std::move(offset), shift) {}

int ReachProfile::at(long long t) const {
    if (t < N) return states[(size_t)t];
    return states[(size_t)(N + (t - N) % mu)];
}

ReachProfile reach_profile(Machine& M, int q, const Word& sigma) {
    if (sigma.empty()) throw std::invalid_argument("reach_profile: empty word");
    ReachProfile P;
    P.q = q;
    std::map<int, long long> seen;
    int cur = q;
    for (long long t = 0;; ++t) {
        auto it = seen.find(cur);
        if (it != seen.end()) {
            P.N = it->second;
            P.mu = t - it->second;
            break;
        }
        seen[cur] = t;
        P.states.push_back(cur);
        cur = M.run(cur, sigma);
    }
    return P;
}

ReachProfile reach_profile(const Dfa& A, int q, const Word& sigma) {
    DfaMachine M(A);
    return reach_profile(M, q, sigma);
}

// ---- Eps ----

Eps Eps::single(long long v) {
    Eps e;
    e.N = v + 1;
    e.mu = 1;
    e.finite = {v};
    e.res = {0};
    return e;
}

Eps Eps::from(long long N, long long r, long long mu) {
    Eps e;
    e.N = N;
    e.mu = mu;
    e.res.assign((size_t)mu, 0);
    e.res[(size_t)pos_mod(r, mu)] = 1;
    return e;
}

Eps Eps::naturals() { return from(0, 0, 1); }

bool Eps::contains(long long x) const {
    if (x < 0) return false;
    if (x < N) return std::binary_search(finite.begin(), finite.end(), x);
    return res[(size_t)(x % mu)] != 0;
}

Eps Eps::with(long long N2, long long mu2) const {
    if (N2 < N || mu2 % mu != 0) throw std::invalid_argument("Eps::with: coarser parameters");
    Eps e;
    e.N = N2;
    e.mu = mu2;
    for (long long x = 0; x < N2; ++x)
        if (contains(x)) e.finite.push_back(x);
    e.res.assign((size_t)mu2, 0);
    for (long long r = 0; r < mu2; ++r) e.res[(size_t)r] = contains(N2 + pos_mod(r - N2, mu2));
    return e;
}

long long Eps::max_constant() const {
    long long m = N;
    if (!finite.empty()) m = std::max(m, finite.back());
    return m;
}

static Eps eps_union(const Eps& a, const Eps& b) {
    long long N = std::max(a.N, b.N), mu = std::lcm(a.mu, b.mu);
    Eps x = a.with(N, mu), y = b.with(N, mu);
    Eps e = x;
    std::vector<long long> f;
    std::set_union(x.finite.begin(), x.finite.end(), y.finite.begin(), y.finite.end(), std::back_inserter(f));
    e.finite = f;
    for (size_t i = 0; i < e.res.size(); ++i) e.res[i] = x.res[i] || y.res[i];
    return e;
}

std::string Eps::str(const std::string& t) const {
    std::vector<std::string> parts;
    if (!finite.empty()) {
        std::string s = "{";
        for (size_t i = 0; i < finite.size(); ++i) s += (i ? "," : "") + std::to_string(finite[i]);
        parts.push_back(t + " in " + s + "}");
    }
    long long cnt = std::count(res.begin(), res.end(), 1);
    if (cnt == mu) {
        parts.push_back(t + " >= " + std::to_string(N));
    } else if (cnt > 0) {
        std::string s;
        for (long long r = 0; r < mu; ++r)
            if (res[(size_t)r]) s += (s.empty() ? "" : ",") + std::to_string(r);
        parts.push_back(t + " >= " + std::to_string(N) + " and " + t + " mod " + std::to_string(mu) +
                        " in {" + s + "}");
    }
    if (parts.empty()) return "false";
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) out += (i ? " or " : "") + parts[i];
    return parts.size() > 1 ? "(" + out + ")" : out;
}

// ---- LinearTerm ----

LinearTerm LinearTerm::var(int n, int i) {
    LinearTerm t = zero(n);
    t.coef[(size_t)i] = 1;
    return t;
}

LinearTerm LinearTerm::zero(int n) {
    LinearTerm t;
    t.coef.assign((size_t)n, 0);
    return t;
}

long long LinearTerm::eval(const std::vector<long long>& t) const {
    long long s = c;
    for (size_t i = 0; i < coef.size(); ++i) s += coef[i] * t[i];
    return s;
}

LinearTerm LinearTerm::operator+(const LinearTerm& o) const {
    LinearTerm r = *this;
    for (size_t i = 0; i < coef.size(); ++i) r.coef[i] += o.coef[i];
    r.c += o.c;
    return r;
}

LinearTerm LinearTerm::operator-(const LinearTerm& o) const {
    LinearTerm r = *this;
    for (size_t i = 0; i < coef.size(); ++i) r.coef[i] -= o.coef[i];
    r.c -= o.c;
    return r;
}

std::string LinearTerm::str(const std::vector<std::string>& names) const {
    std::string s;
    for (size_t i = 0; i < coef.size(); ++i) {
        long long a = coef[i];
        if (!a) continue;
        std::string nm = i < names.size() ? names[i] : "t" + std::to_string(i + 1);
        if (s.empty())
            s += a == 1 ? "" : a == -1 ? "-" : std::to_string(a);
        else
            s += a == 1 ? " + " : a == -1 ? " - " : (a > 0 ? " + " + std::to_string(a) : " - " + std::to_string(-a));
        s += nm;
    }
    if (c || s.empty()) s += s.empty() ? std::to_string(c) : (c > 0 ? " + " : " - ") + std::to_string(c > 0 ? c : -c);
    return s;
}

// ---- ExponentPredicate ----

ExponentPredicate ExponentPredicate::constant(int nvars, bool v) {
    ExponentPredicate p;
    p.nvars = nvars;
    p.nodes.resize(1);
    p.nodes[0].accept = v;
    return p;
}

bool ExponentPredicate::eval(const std::vector<long long>& t) const {
    std::vector<signed char> memo(nodes.size(), -1);
    std::function<bool(int)> go = [&](int v) -> bool {
        if (memo[(size_t)v] >= 0) return memo[(size_t)v];
        bool r = nodes[(size_t)v].accept;
        for (const auto& e : nodes[(size_t)v].out) {
            if (r) break;
            bool ok = true;
            for (const auto& c : e.conds)
                if (!c.set.contains(c.term.eval(t))) {
                    ok = false;
                    break;
                }
            if (ok && go(e.to)) r = true;
        }
        memo[(size_t)v] = r;
        return r;
    };
    return go(root);
}

long long ExponentPredicate::modulus() const {
    long long m = 1;
    for (const auto& n : nodes)
        for (const auto& e : n.out)
            for (const auto& c : e.conds) m = std::lcm(m, c.set.mu);
    return m;
}

long long ExponentPredicate::threshold() const {
    long long m = 0;
    for (const auto& n : nodes)
        for (const auto& e : n.out)
            for (const auto& c : e.conds) m = std::max(m, c.set.max_constant());
    return m;
}

void ExponentPredicate::normalize() {
    long long N = threshold(), mu = modulus();
    for (auto& n : nodes)
        for (auto& e : n.out)
            for (auto& c : e.conds) c.set = c.set.with(N, mu);
}

void ExponentPredicate::prune() {
    size_t n = nodes.size();
    std::vector<std::vector<int>> rev(n);
    for (size_t v = 0; v < n; ++v)
        for (const auto& e : nodes[v].out) rev[(size_t)e.to].push_back((int)v);
    std::vector<char> alive(n, 0);
    std::vector<int> st;
    for (size_t v = 0; v < n; ++v)
        if (nodes[v].accept) alive[v] = 1, st.push_back((int)v);
    while (!st.empty()) {
        int v = st.back();
        st.pop_back();
        for (int u : rev[(size_t)v])
            if (!alive[(size_t)u]) alive[(size_t)u] = 1, st.push_back(u);
    }
    // keep reachable and alive nodes (root always kept)
    std::vector<int> id(n, -1);
    std::vector<int> order;
    id[(size_t)root] = 0;
    order.push_back(root);
    for (size_t i = 0; i < order.size(); ++i)
        for (const auto& e : nodes[(size_t)order[i]].out)
            if (alive[(size_t)e.to] && id[(size_t)e.to] < 0) {
                id[(size_t)e.to] = (int)order.size();
                order.push_back(e.to);
            }
    std::vector<Node> out(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        out[i].accept = nodes[(size_t)order[i]].accept;
        for (const auto& e : nodes[(size_t)order[i]].out)
            if (alive[(size_t)e.to]) {
                Edge f = e;
                f.to = id[(size_t)e.to];
                out[i].out.push_back(f);
            }
    }
    nodes = std::move(out);
    root = 0;
}

size_t ExponentPredicate::edge_count() const {
    size_t s = 0;
    for (const auto& n : nodes) s += n.out.size();
    return s;
}

std::string ExponentPredicate::str() const {
    std::vector<std::string> nm = names;
    for (int i = (int)nm.size(); i < nvars; ++i) nm.push_back("t" + std::to_string(i + 1));
    std::ostringstream os;
    for (size_t v = 0; v < nodes.size(); ++v) {
        os << "n" << v << ((int)v == root ? " (root)" : "") << (nodes[v].accept ? " accept" : "") << "\n";
        for (const auto& e : nodes[v].out) {
            os << "  -> n" << e.to;
            for (size_t i = 0; i < e.conds.size(); ++i)
                os << (i ? " and " : " if ") << e.conds[i].set.str(e.conds[i].term.str(nm));
            os << "\n";
        }
    }
    return os.str();
}

ExponentPredicate disjoin(const std::vector<ExponentPredicate>& ps) {
    if (ps.empty()) throw std::invalid_argument("disjoin: nothing to join");
    ExponentPredicate r;
    r.nvars = ps[0].nvars;
    r.names = ps[0].names;
    r.nodes.resize(1);
    r.root = 0;
    for (const auto& p : ps) {
        if (p.nvars != r.nvars) throw std::invalid_argument("disjoin: arity mismatch");
        int base = (int)r.nodes.size();
        for (auto n : p.nodes) {
            for (auto& e : n.out) e.to += base;
            r.nodes.push_back(n);
        }
        r.nodes[0].out.push_back({{}, base + p.root});
    }
    r.prune();
    return r;
}

// ---- construction ----

namespace {

// groups the pieces of a reach profile by target state
std::map<int, Eps> profile_pieces(const ReachProfile& P) {
    std::map<int, Eps> by;
    auto add = [&](int q, const Eps& e) {
        auto it = by.find(q);
        if (it == by.end())
            by.emplace(q, e);
        else
            it->second = eps_union(it->second, e);
    };
    for (long long t = 0; t < P.N; ++t) add(P.states[(size_t)t], Eps::single(t));
    for (long long j = 0; j < P.mu; ++j) add(P.states[(size_t)(P.N + j)], Eps::from(P.N, P.N + j, P.mu));
    return by;
}

}  // namespace

ExponentPredicate power_membership(Machine& M, const std::vector<Word>& sigmas,
                                   const std::vector<LinearTerm>& terms_in, int nvars) {
    size_t n = sigmas.size();
    if (nvars < 0) nvars = (int)n;
    std::vector<LinearTerm> terms = terms_in;
    if (terms.empty())
        for (size_t i = 0; i < n; ++i) terms.push_back(LinearTerm::var(nvars, (int)i));
    if (terms.size() != n) throw std::invalid_argument("power_membership: one term per word");

    ExponentPredicate P;
    P.nvars = nvars;
    std::map<std::pair<int, size_t>, int> memo;
    std::function<int(int, size_t)> build = [&](int q, size_t i) -> int {
        auto key = std::make_pair(q, i);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int id = (int)P.nodes.size();
        P.nodes.emplace_back();
        memo[key] = id;
        if (i == n) {
            P.nodes[(size_t)id].accept = M.accepting(q);
            return id;
        }
        ReachProfile R = reach_profile(M, q, sigmas[i]);
        for (auto& [q2, e] : profile_pieces(R)) {
            int to = build(q2, i + 1);
            P.nodes[(size_t)id].out.push_back({{{terms[i], e}}, to});
        }
        return id;
    };
    P.root = build(M.start(), 0);
    P.prune();
    return P;
}

ExponentPredicate power_membership(const Dfa& A, const std::vector<Word>& sigmas) {
    DfaMachine M(A);
    return power_membership(M, sigmas);
}

ExponentPredicate padded_power_membership(Machine& M, const std::vector<std::vector<BigInt>>& patterns) {
    size_t m = patterns.size();
    if (m == 0) throw std::invalid_argument("padded_power_membership: no tracks");
    std::vector<int> first(m);
    int nvars = 0;
    for (size_t i = 0; i < m; ++i) {
        first[i] = nvars;
        nvars += (int)patterns[i].size();
    }
    int d = 2;
    if (auto* dm = dynamic_cast<DfaMachine*>(&M)) d = dm->dfa().base;

    ExponentPredicate P;
    P.nvars = nvars;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < patterns[i].size(); ++j)
            P.names.push_back("k" + std::to_string(i + 1) + std::to_string(j + 1));

    using Key = std::tuple<int, std::vector<size_t>, std::vector<LinearTerm>>;
    std::map<Key, int> memo;
    std::function<int(int, std::vector<size_t>, std::vector<LinearTerm>)> build =
        [&](int q, std::vector<size_t> j, std::vector<LinearTerm> c) -> int {
        Key key{q, j, c};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        int id = (int)P.nodes.size();
        P.nodes.emplace_back();
        memo[key] = id;
        std::vector<size_t> active;
        for (size_t i = 0; i < m; ++i)
            if (j[i] < patterns[i].size()) active.push_back(i);
        if (active.empty()) {
            P.nodes[(size_t)id].accept = M.accepting(q);
            return id;
        }
        Letter col(m, 0);
        for (size_t i : active) col[i] = patterns[i][j[i]];
        Word w(d, (int)m, {col});
        ReachProfile R = reach_profile(M, q, w);
        auto pieces = profile_pieces(R);
        auto remaining = [&](size_t i) { return LinearTerm::var(nvars, first[i] + (int)j[i]) - c[i]; };
        for (size_t s : active) {
            LinearTerm rs = remaining(s);
            std::vector<ExponentPredicate::Cond> base;
            for (size_t i : active)
                if (i != s) base.push_back({remaining(i) - rs, Eps::naturals()});
            std::vector<size_t> j2 = j;
            j2[s]++;
            std::vector<LinearTerm> c2 = c;
            for (size_t i : active) c2[i] = i == s ? LinearTerm::zero(nvars) : c[i] + rs;
            for (auto& [q2, e] : pieces) {
                auto conds = base;
                conds.push_back({rs, e});
                int to = build(q2, j2, c2);
                P.nodes[(size_t)id].out.push_back({conds, to});
            }
        }
        return id;
    };
    P.root = build(M.start(), std::vector<size_t>(m, 0), std::vector<LinearTerm>(m, LinearTerm::zero(nvars)));
    P.prune();
    return P;
}

ExponentPredicate padded_power_membership(const Dfa& A, const std::vector<std::vector<BigInt>>& patterns) {
    DfaMachine M(A);
    return padded_power_membership(M, patterns);
}

// all coordinates >= 1: the sign of each coordinate is the sign of its last nonzero digit
static AutoSet positive_orthant(int d, int n) {
    auto alpha = signed_alphabet(d, n);
    long long states = 1;
    for (int i = 0; i < n; ++i) states *= 3;
    Dfa A;
    A.base = d;
    A.alphabet = alpha;
    A.n = (int)states;
    A.start = 0;
    A.fin.assign((size_t)states, 0);
    A.delta.assign((size_t)states * alpha.size(), 0);
    long long all_pos = 0;
    for (int i = 0, p = 1; i < n; ++i, p *= 3) all_pos += p;
    A.fin[(size_t)all_pos] = 1;
    for (long long s = 0; s < states; ++s)
        for (size_t a = 0; a < alpha.size(); ++a) {
            long long t = 0, p = 1, rest = s;
            for (int i = 0; i < n; ++i, p *= 3) {
                long long cur = rest % 3;
                rest /= 3;
                const BigInt& x = alpha[a][(size_t)i];
                if (x > 0) cur = 1;
                if (x < 0) cur = 2;
                t += cur * p;
            }
            A.at((int)s, (int)a) = (int)t;
        }
    return from_value_closed(minimize(A), d, n);
}

ExponentPredicate powers_relation(const AutoSet& X) {
    int n = X.dim, d = X.d;
    Tuple one(n, 1), minus(n, -1), zero(n, 0);
    AutoSet nonneg = translate(positive_orthant(d, n), minus);
    if (!set_empty(set_difference(X, nonneg))) throw std::invalid_argument("powers_relation: set is not inside N^n");
    AutoSet Xp = translate(set_intersection(X, positive_orthant(d, n)), minus);
    DfaMachine M(Xp.dfa);
    std::vector<int> pi(n);
    std::iota(pi.begin(), pi.end(), 0);
    std::vector<ExponentPredicate> parts;
    do {
        std::vector<Word> sig;
        std::vector<LinearTerm> terms;
        for (int i = 0; i < n; ++i) {
            Letter l(n, d - 1);
            for (int j = 0; j < i; ++j) l[(size_t)pi[(size_t)j]] = 0;
            sig.push_back(Word(d, n, {l}));
            LinearTerm t = LinearTerm::var(n, pi[(size_t)i]);
            if (i) t = t - LinearTerm::var(n, pi[(size_t)i - 1]);
            terms.push_back(t);
        }
        parts.push_back(power_membership(M, sig, terms, n));
    } while (std::next_permutation(pi.begin(), pi.end()));
    ExponentPredicate r = disjoin(parts);
    for (int i = 0; i < n; ++i) r.names.push_back("k" + std::to_string(i + 1));
    return r;
}

json to_json(const ExponentPredicate& p) {
    json nodes = json::array();
    for (const auto& n : p.nodes) {
        json edges = json::array();
        for (const auto& e : n.out) {
            json conds = json::array();
            for (const auto& c : e.conds)
                conds.push_back({{"coef", c.term.coef},
                                 {"const", c.term.c},
                                 {"N", c.set.N},
                                 {"mu", c.set.mu},
                                 {"finite", c.set.finite},
                                 {"residues", std::vector<int>(c.set.res.begin(), c.set.res.end())}});
            edges.push_back({{"to", e.to}, {"conds", conds}});
        }
        nodes.push_back({{"accept", n.accept}, {"edges", edges}});
    }
    return {{"nvars", p.nvars}, {"names", p.names}, {"root", p.root}, {"nodes", nodes}};
}

}  // namespace autostab
