#include "autostab/classify.hpp"

#include <functional>
#include <numeric>

namespace autostab {

using nlohmann::json;

namespace {

Tuple tadd(const Tuple& a, const Tuple& b) {
    Tuple r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Tuple tscale(const Tuple& a, const BigInt& f) {
    Tuple r = a;
    for (auto& x : r) x *= f;
    return r;
}

// letterwise sum of equal-length words
Word wadd(const Word& a, const Word& b, int sign = 1) {
    Word r = a;
    for (size_t i = 0; i < r.size(); ++i)
        for (size_t j = 0; j < r.letters[i].size(); ++j) r.letters[i][j] += sign * b.letters[i][j];
    return r;
}

}  // namespace

std::vector<PowerForm> telescope(const std::vector<Word>& u, const std::vector<Word>& v) {
    if (u.size() != v.size() + 1) throw std::invalid_argument("telescope: need one more fixed word than cycles");
    const Word& u0 = u[0];
    int d = u0.d, dim = u0.dim;
    if (v.empty()) return {{u0, {}}};
    std::vector<Word> ur(u.begin() + 1, u.end()), vr(v.begin() + 1, v.end());
    std::vector<PowerForm> out;
    for (const auto& sub : telescope(ur, vr)) {
        const Word& b = sub.a;
        // v1 used zero times
        out.push_back({concat(u0, b), sub.tau});
        // v1 used k >= 1 times: [u0 v1^k b] = [a tau1^{k-1}]
        const Word& v1 = v[0];
        Tuple vb = evaluate(b);
        Tuple x = tadd(evaluate(v1), tadd(tscale(vb, dpow(d, v1.size())), tscale(vb, -1)));
        Tuple y = tadd(evaluate(u0), tscale(tadd(vb, x), dpow(d, u0.size())));
        Word a(d, dim);
        a.push(y);
        for (size_t i = 1; i < u0.size() + v1.size(); ++i) a.push(Letter((size_t)dim, 0));
        Word t1(d, dim);
        t1.push(x);
        for (size_t i = 1; i < v1.size(); ++i) t1.push(Letter((size_t)dim, 0));
        PowerForm f{a, {t1}};
        for (const auto& t : sub.tau) f.tau.push_back(shift(t, b.size()));
        out.push_back(f);
    }
    return out;
}

CycleDecomposition sparse_to_cycles(const AutoSet& A, const Sparse& S) {
    CycleDecomposition D;
    D.d = A.d;
    D.dim = A.dim;
    for (const auto& be : S.components) {
        size_t n = be.w.size();
        size_t N = 1;
        for (const auto& w : be.w) N = std::lcm(N, w.size());
        // w_i* = union over j < l_i of w_i^j (w_i^{l_i})*, with w_i^j absorbed into the word before it
        std::vector<size_t> l(n);
        for (size_t i = 0; i < n; ++i) l[i] = N / be.w[i].size();
        std::vector<Word> v(n);
        for (size_t i = 0; i < n; ++i) v[i] = power(be.w[i], l[i]);
        std::vector<size_t> j(n, 0);
        while (true) {
            std::vector<Word> u = be.u;
            for (size_t i = 0; i < n; ++i) u[i] = concat(u[i], power(be.w[i], j[i]));
            for (const auto& f : telescope(u, v)) {
                CycleComponent c;
                c.N = N;
                c.alpha = evaluate(f.a);
                std::vector<Word> tau;
                for (const auto& t : f.tau) tau.push_back(shift(t, f.a.size()));
                for (size_t i = 0; i < tau.size(); ++i)
                    c.sigma.push_back(i + 1 < tau.size() ? wadd(tau[i], tau[i + 1], -1) : tau[i]);
                D.components.push_back(c);
            }
            size_t i = 0;
            while (i < n && ++j[i] == l[i]) j[i++] = 0;
            if (i == n) break;
        }
    }
    return D;
}

CycleDecomposition sparse_to_cycles(const AutoSet& A) {
    auto v = is_sparse(canonical_language(A));
    if (!std::holds_alternative<Sparse>(v)) throw std::invalid_argument("sparse_to_cycles: set is not sparse");
    return sparse_to_cycles(A, std::get<Sparse>(v));
}

std::vector<Tuple> component_elements(const CycleComponent& c, int d, long long emax) {
    std::vector<Tuple> out;
    size_t n = c.sigma.size();
    if (n == 0) return {c.alpha};
    // [sigma^e] for e <= emax
    std::vector<std::vector<Tuple>> pw(n);
    for (size_t i = 0; i < n; ++i) {
        Tuple cur((size_t)c.alpha.size(), 0);
        Tuple s = evaluate(c.sigma[i]);
        BigInt f = 1, step = dpow(d, c.N);
        for (long long e = 0; e <= emax; ++e) {
            pw[i].push_back(cur);
            cur = tadd(cur, tscale(s, f));
            f *= step;
        }
    }
    std::function<void(size_t, long long, Tuple)> rec = [&](size_t i, long long lo, Tuple acc) {
        if (i == n) {
            out.push_back(acc);
            return;
        }
        for (long long x = lo; x <= emax; ++x) rec(i + 1, x, tadd(acc, pw[i][(size_t)x]));
    };
    rec(0, 0, c.alpha);
    return out;
}

json to_json(const CycleDecomposition& D) {
    json comps = json::array();
    for (const auto& c : D.components) {
        json sig = json::array();
        for (const auto& s : c.sigma) sig.push_back(format_word(s));
        comps.push_back({{"alpha", letter_to_json(c.alpha)}, {"N", c.N}, {"sigma", sig}});
    }
    return {{"base", D.d}, {"dim", D.dim}, {"components", comps}};
}

}  // namespace autostab
