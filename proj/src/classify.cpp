#include "autostab/classify.hpp"
#include "autostab/nongen.hpp"

#include <algorithm>
#include <chrono>
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

Word wsum(const std::vector<Word>& ws) {
    Word r = ws[0];
    for (size_t k = 1; k < ws.size(); ++k)
        for (size_t i = 0; i < r.size(); ++i)
            for (size_t j = 0; j < r.letters[i].size(); ++j) r.letters[i][j] += ws[k].letters[i][j];
    return r;
}

// [sigma^e]
Tuple spow(const Word& s, long long e) {
    Tuple v = evaluate(s);
    BigInt f = 1, step = dpow(s.d, s.size()), tot = 0;
    for (long long t = 0; t < e; ++t) {
        tot += f;
        f *= step;
    }
    return tscale(v, tot);
}

FSetDescription image_of(const LocusExprPtr& e, const CycleComponent& c, long long delta, int d, int dim) {
    if (!e) return FSetDescription::empty(d, dim);
    switch (e->kind) {
        case LocusExpr::Kind::Locus: return locus_image(e->locus, c, delta, d, dim);
        case LocusExpr::Kind::Union: {
            std::vector<FSetDescription> xs;
            for (auto& k : e->kids) xs.push_back(image_of(k, c, delta, d, dim));
            return FSetDescription::unite(xs);
        }
        case LocusExpr::Kind::Minus:
            return FSetDescription::meet({image_of(e->kids[0], c, delta, d, dim),
                                          image_of(e->kids[1], c, delta, d, dim).complemented()});
    }
    return FSetDescription::empty(d, dim);
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool attach_ladder(Verdict& v, const Ladder& L, const AutoSet& A, const std::string& how) {
    auto chk = verify_ladder(L, [&](const Tuple& t) { return A.member(t); });
    if (!chk.ok) {
        v.diagnostics.push_back(how + ": ladder failed verification");
        return false;
    }
    v.kind = Verdict::Kind::Unstable;
    v.ladder = L;
    v.bits = chk.bits;
    v.construction = how;
    return true;
}

std::optional<Ladder> bounded_search(const AutoSet& A, const ClassifyOptions& opt, long long limit) {
    LadderSearchOptions so;
    so.N = opt.N;
    so.bound = opt.bound;
    so.seed = opt.seed;
    so.node_limit = limit;
    return ladder_search(A, so);
}

// A = A + s for a small period s: a union of cosets
std::optional<FSetDescription> periodic_description(const AutoSet& A, long long maxp = 64) {
    for (long long s = 1; s <= maxp; ++s) {
        if (!set_equal(translate(A, BigInt(s)), A)) continue;
        std::vector<FSetDescription> xs;
        for (long long r = 0; r < s; ++r)
            if (A.member(r)) xs.push_back(FSetDescription::coset(r, s, A.d));
        return FSetDescription::unite(xs);
    }
    return std::nullopt;
}

// (x + y in r + sZ) and (x + y in B), B = union of A - t containing the negatives and
// missing r + sN
bool mixed_case(Verdict& v, const AutoSet& A, const std::vector<long long>& offsets, int N, bool flip,
                const AutoSet& orig) {
    int d = A.d;
    AutoSet B = empty_set(d);
    std::vector<Relation> atoms;
    for (long long t : offsets) {
        B = set_union(B, translate(A, BigInt(-t)));
        atoms.push_back(Relation::atom(0, 0, Tuple{BigInt(t)}));
    }
    if (!set_empty(set_difference(negatives(d), B))) {
        v.diagnostics.push_back("mixed-coset: translates do not cover the negatives");
        return false;
    }
    Dfa C = canonical_positive(B);
    auto co = coreachable_mask(C);
    std::optional<IndexWord> best;
    for (int p = 0; p < C.n; ++p) {
        if (co[(size_t)p]) continue;
        auto w = shortest_path(C, C.start, p);
        if (w && (!best || w->size() < best->size() || (w->size() == best->size() && *w < *best))) best = w;
    }
    if (!best) {
        v.diagnostics.push_back("mixed-coset: no forbidden prefix");
        return false;
    }
    Word sigma = decode(C.alphabet, *best, d);
    if (sigma.empty() || sigma.letters.back()[0] == 0) sigma.push(Letter{1});
    BigInt r = value(sigma), s = dpow(d, sigma.size());
    std::vector<BigInt> a, b;
    for (int i = 0; i <= N; ++i) {
        a.push_back(r + s * (i - 1));
        b.push_back(-s * i);
    }
    Ladder L = Ladder::plain(a, b);
    L.relation = Relation::all({Relation::coset(r, s), atoms.size() == 1 ? atoms[0] : Relation::any(atoms)});
    if (flip) L = L.negated();
    v.parameters["forbidden_prefix"] = format_word(sigma);
    v.parameters["r"] = big_to_json(flip ? BigInt(-r) : r);
    v.parameters["s"] = big_to_json(s);
    return attach_ladder(v, L, orig, "mixed-coset");
}

bool tail_case(Verdict& v, const AutoSet& A, const Dfa& P, bool flip, int N, const AutoSet& orig) {
    auto c = choose_state(P);
    if (!c) {
        v.diagnostics.push_back("nongen-Lq: no state meets the loop conditions");
        return false;
    }
    auto g = nongen_ladder(loop_language(P, c->q), c->witness, N);
    if (!g) {
        v.diagnostics.push_back("nongen-Lq: ladder construction failed at state " + std::to_string(c->q));
        return false;
    }
    Ladder L = phi_ladder(P, *c, *g);
    if (flip) L = L.negated();
    v.parameters["state"] = c->q;
    v.parameters["route"] = c->route;
    v.parameters["branch"] = g->branch;
    v.parameters["K"] = g->K;
    v.parameters["mu"] = format_word(c->mu);
    v.parameters["witness"] = {{"r", c->witness.r}, {"s", c->witness.s}, {"tau", format_word(c->witness.tau)}};
    (void)A;
    return attach_ladder(v, L, orig, "nongen-Lq");
}

}  // namespace

std::string Verdict::kind_name() const {
    switch (kind) {
        case Kind::Stable: return "StableCertified";
        case Kind::Unstable: return "UnstableCertified";
        default: return "Inconclusive";
    }
}

FSetDescription locus_image(const Locus& L, const CycleComponent& c, long long delta, int d, int dim) {
    Tuple cst((size_t)dim, 0);
    for (size_t v = 0; v < L.zero.size(); ++v)
        if (L.zero[v] >= 0) cst = tadd(cst, spow(c.sigma[v], L.zero[v]));
    std::vector<CycleSet> cyc;
    for (auto& g : L.groups) {
        Tuple rho((size_t)dim, 0);
        for (size_t i = 0; i < g.vars.size(); ++i) {
            const Word& s = c.sigma[(size_t)g.vars[i]];
            long long e = g.res + g.off[i];
            cst = tadd(cst, spow(s, e));
            rho = tadd(rho, tscale(spow(s, delta), dpow(d, c.N * (size_t)e)));
        }
        cyc.push_back({rho, (long long)c.N * delta, d});
    }
    std::vector<FSetDescription> xs;
    for (size_t mask = 0; mask < ((size_t)1 << cyc.size()); ++mask) {
        FTerm t;
        t.b = cst;
        for (size_t g = 0; g < cyc.size(); ++g)
            if (mask >> g & 1) t.cycles.push_back(cyc[g]);
        auto leaf = FSetDescription::leaf(t, d);
        leaf.dim = dim;
        xs.push_back(leaf);
    }
    auto u = FSetDescription::unite(xs);
    u.dim = dim;
    return u;
}

Verdict classify_sparse(const AutoSet& A, const CycleDecomposition& dec, const ClassifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    v.sparse = true;
    int d = A.d, dim = A.dim;
    std::vector<FSetDescription> parts;
    json comps = json::array();
    for (size_t ci = 0; ci < dec.components.size(); ++ci) {
        const auto& c = dec.components[ci];
        size_t n = c.sigma.size();
        if (n == 0) {
            FTerm t;
            t.b = c.alpha;
            auto leaf = FSetDescription::leaf(t, d);
            leaf.dim = dim;
            parts.push_back(leaf);
            v.evidence.push_back("true");
            comps.push_back({{"n", 0}});
            continue;
        }
        // one predicate per ordering of the exponents, over consecutive differences
        std::vector<int> f(n);
        std::iota(f.begin(), f.end(), 0);
        std::map<std::vector<int>, ExponentPredicate> preds;
        long long M = 1, delta = 1;
        do {
            std::vector<Word> tau;
            for (size_t i = 0; i < n; ++i) {
                std::vector<Word> tail;
                for (size_t j = i; j < n; ++j) tail.push_back(c.sigma[(size_t)f[j]]);
                tau.push_back(wsum(tail));
            }
            ReaderMachine R(A, c.alpha);
            auto P = power_membership(R, tau);
            M = std::max(M, P.threshold());
            delta = std::lcm(delta, P.modulus());
            preds.emplace(f, std::move(P));
        } while (std::next_permutation(f.begin(), f.end()));
        TupleOracle X = [&](const std::vector<long long>& e) {
            std::vector<int> g(n);
            std::iota(g.begin(), g.end(), 0);
            std::stable_sort(g.begin(), g.end(), [&](int a, int b) { return e[(size_t)a] < e[(size_t)b]; });
            std::vector<long long> t(n);
            for (size_t i = 0; i < n; ++i) t[i] = e[(size_t)g[i]] - (i ? e[(size_t)g[i - 1]] : 0);
            return preds.at(g).eval(t);
        };
        auto an = analyze_stability((int)n, M, delta, X, opt.N);
        comps.push_back({{"n", n}, {"M", M}, {"delta", delta}, {"loci", an.loci}});
        if (!an.stable) {
            const auto& w = *an.ladder;
            Ladder L;
            L.N = w.N;
            for (int i = 0; i <= w.N; ++i) {
                Tuple a = c.alpha, b((size_t)dim, 0);
                for (size_t k = 0; k < w.left.size(); ++k)
                    a = tadd(a, spow(c.sigma[(size_t)w.left[k]], w.rows[(size_t)i][k]));
                for (size_t k = 0; k < w.right.size(); ++k)
                    b = tadd(b, spow(c.sigma[(size_t)w.right[k]], w.cols[(size_t)i][k]));
                L.rows.push_back({a});
                L.cols.push_back({b});
            }
            v.parameters["components"] = comps;
            v.parameters["failing_component"] = ci;
            v.parameters["exponent_ladder"] = to_json(w);
            if (!attach_ladder(v, L, A, "sparse-rewriter")) v.kind = Verdict::Kind::Inconclusive;
            v.seconds = since(t0);
            return v;
        }
        parts.push_back(image_of(an.good, c, delta, d, dim).translated(c.alpha));
        v.evidence.push_back(locus_expr_formula(an.good, delta).str());
    }
    v.parameters["components"] = comps;
    auto F = FSetDescription::unite(parts);
    F.dim = dim;
    F.d = d;
    if (set_equal(fset_to_autoset(F), A)) {
        v.kind = Verdict::Kind::Stable;
        v.fset = F;
    } else {
        v.kind = Verdict::Kind::Inconclusive;
        v.diagnostics.push_back("sparse: assembled description differs from the input set");
    }
    v.seconds = since(t0);
    return v;
}

Verdict classify_nonsparse(const AutoSet& A, const ClassifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    v.sparse = false;
    if (A.dim != 1) {
        v.diagnostics.push_back("non-sparse sets are classified in dimension 1 only");
        return v;
    }
    Dfa Ppos = positive_language(A), Pneg = negative_language(A);
    bool sp_pos = sparse(canonical_positive(A)), sp_neg = sparse(canonical_negative(A));
    auto gp = generic_in_N_language(Ppos), gn = generic_in_N_language(Pneg);
    v.parameters["tails"] = {{"positive", {{"sparse", sp_pos}, {"generic", gp.generic}}},
                             {"negative", {{"sparse", sp_neg}, {"generic", gn.generic}}}};
    auto done = [&] {
        v.seconds = since(t0);
        return v;
    };
    if (sp_pos && gn.generic && mixed_case(v, A, gn.offsets, opt.N, false, A)) return done();
    if (sp_neg && gp.generic && mixed_case(v, negate(A), gp.offsets, opt.N, true, A)) return done();

    bool tried = false;
    if (!gp.generic && !sp_pos) {
        tried = true;
        if (tail_case(v, A, Ppos, false, opt.N, A)) {
            if (auto p = bounded_search(A, opt, std::min<long long>(opt.node_limit, 200000))) v.plain_ladder = p;
            return done();
        }
    }
    if (!gn.generic && !sp_neg) {
        tried = true;
        if (tail_case(v, negate(A), Pneg, true, opt.N, A)) {
            if (auto p = bounded_search(A, opt, std::min<long long>(opt.node_limit, 200000))) v.plain_ladder = p;
            return done();
        }
    }
    if (!tried && gp.generic && gn.generic) {
        v.diagnostics.push_back("generic in Z: no decision procedure, bounded search only");
        v.parameters["genericity"] = {{"positive_offsets", gp.offsets.size()}, {"negative_offsets", gn.offsets.size()},
                                      {"positive_max_gap", gp.max_gap}, {"negative_max_gap", gn.max_gap}};
        if (auto F = periodic_description(A)) {
            if (set_equal(fset_to_autoset(*F), A)) {
                v.kind = Verdict::Kind::Stable;
                v.fset = F;
                v.evidence.push_back("periodic");
                return done();
            }
        }
    }
    // a sparse complement is decided on the sparse side
    std::optional<Verdict> co;
    AutoSet Ac = set_complement(A);
    auto cs = is_sparse(canonical_language(Ac));
    if (std::holds_alternative<Sparse>(cs)) {
        co = classify_sparse(Ac, sparse_to_cycles(Ac, std::get<Sparse>(cs)), opt);
        if (co->kind == Verdict::Kind::Stable) {
            auto F = co->fset->complemented();
            if (set_equal(fset_to_autoset(F), A)) {
                v.kind = Verdict::Kind::Stable;
                v.fset = F;
                v.evidence = co->evidence;
                v.parameters["complement"] = co->parameters;
                return done();
            }
            v.diagnostics.push_back("complement: description failed verification");
        }
    }
    if (auto L = bounded_search(A, opt, opt.node_limit)) {
        if (attach_ladder(v, *L, A, "brute-force")) {
            v.plain_ladder = L;
            return done();
        }
    } else {
        v.diagnostics.push_back("bounded ladder search found nothing");
    }
    if (co && co->kind == Verdict::Kind::Unstable) {
        // x + y not in A, on the complement's ladder
        Ladder L = *co->ladder;
        L.relation = Relation::neg(L.relation);
        v.parameters["complement"] = co->parameters;
        if (attach_ladder(v, L, A, "sparse-rewriter")) return done();
    }
    v.kind = Verdict::Kind::Inconclusive;
    return done();
}

Verdict classify(const AutoSet& A, const ClassifyOptions& opt) {
    auto t0 = std::chrono::steady_clock::now();
    AutoSet B = A;
    B.dfa = minimize(trim(A.dfa));
    if (B.dfa.n == 0) B = empty_set(A.d, A.dim);
    auto sv = is_sparse(canonical_language(B));
    Verdict v;
    if (std::holds_alternative<Sparse>(sv)) {
        auto dec = sparse_to_cycles(B, std::get<Sparse>(sv));
        v = classify_sparse(B, dec, opt);
        v.parameters["decomposition"] = to_json(dec);
    } else {
        v = classify_nonsparse(B, opt);
    }
    v.seconds = since(t0);
    return v;
}

bool verify_verdict(const Verdict& v, const AutoSet& A, std::string* why) {
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (v.kind == Verdict::Kind::Stable) {
        if (!v.fset) return fail("stable verdict without a description");
        if (!set_equal(fset_to_autoset(*v.fset), A)) return fail("description differs from the set");
        return true;
    }
    if (v.kind == Verdict::Kind::Unstable) {
        if (!v.ladder) return fail("unstable verdict without a ladder");
        if (!verify_ladder(*v.ladder, [&](const Tuple& t) { return A.member(t); }).ok)
            return fail("ladder does not show the i <= j pattern");
        return true;
    }
    return true;
}

json to_json(const Verdict& v) {
    json cert = json::object();
    if (v.kind == Verdict::Kind::Stable) {
        cert["fset"] = to_json(*v.fset);
        cert["evidence"] = v.evidence;
    } else if (v.kind == Verdict::Kind::Unstable) {
        LadderCheck chk;
        chk.ok = true;
        chk.bits = v.bits;
        cert["ladder"] = to_json(*v.ladder, &chk);
        if (v.plain_ladder) cert["plain_ladder"] = to_json(*v.plain_ladder);
    }
    cert["diagnostics"] = v.diagnostics;
    return {{"verdict", v.kind_name()},
            {"certificate", cert},
            {"provenance", {{"construction", v.construction}, {"sparse", v.sparse}}},
            {"parameters", v.parameters},
            {"timings", {{"seconds", v.seconds}}}};
}

}  // namespace autostab
