#include "doctest.h"

#include "autostab/ldelta.hpp"

#include <random>

using namespace autostab;

namespace {

// test-side formula: printed to text, evaluated on its own
struct TF {
    std::string op;                 // mod eq lt not and or
    int v1 = -1, v2 = -1;           // variable indices, -1 for constant
    long long e1 = 0, e2 = 0;       // successor counts or constants
    long long dl = 1, K = 0;
    std::vector<TF> kids;

    long long val(int v, long long e, const std::vector<long long>& x) const { return v < 0 ? e : x[v] + e; }
    bool eval(const std::vector<long long>& x) const {
        if (op == "mod") {
            long long t = val(v1, e1, x) - K;
            return ((t % dl) + dl) % dl == 0;
        }
        if (op == "eq") return val(v1, e1, x) == val(v2, e2, x);
        if (op == "lt") return val(v1, e1, x) < val(v2, e2, x);
        if (op == "not") return !kids[0].eval(x);
        bool conj = op == "and";
        for (auto& k : kids)
            if (k.eval(x) != conj) return !conj;
        return conj;
    }
    static std::string term(int v, long long e) {
        if (v < 0) return std::to_string(e);
        std::string s = "x" + std::to_string(v + 1);
        return e ? "(S " + std::to_string(e) + " " + s + ")" : s;
    }
    std::string text() const {
        if (op == "mod") return "(mod " + term(v1, e1) + " " + std::to_string(dl) + " " + std::to_string(K) + ")";
        if (op == "eq" || op == "lt") return "(" + op + " " + term(v1, e1) + " " + term(v2, e2) + ")";
        std::string s = "(" + op;
        for (auto& k : kids) s += " " + k.text();
        return s + ")";
    }
};

TF random_tf(std::mt19937& rng, int n, long long dl, int depth, bool order) {
    TF f;
    int r = rng() % 10;
    if (depth == 0 || r < 4) {
        int a = rng() % (order ? 3 : 2);
        f.v1 = rng() % n;
        f.e1 = rng() % 3;
        if (a == 0) {
            f.op = "mod";
            f.dl = dl;
            f.K = rng() % dl;
        } else {
            f.op = a == 1 ? "eq" : "lt";
            if (rng() % 4 == 0) {
                f.v2 = -1;
                f.e2 = rng() % 6;
            } else {
                f.v2 = rng() % n;
                f.e2 = rng() % 3;
            }
        }
        return f;
    }
    if (r < 6) {
        f.op = "not";
        f.kids.push_back(random_tf(rng, n, dl, depth - 1, order));
        return f;
    }
    f.op = r < 8 ? "and" : "or";
    int k = 2 + rng() % 2;
    for (int i = 0; i < k; ++i) f.kids.push_back(random_tf(rng, n, dl, depth - 1, order));
    return f;
}

bool equivalent_below(const LFormula& a, const LFormula& b, int n, long long bound) {
    std::vector<long long> x((size_t)n, 0);
    while (true) {
        if (eval_ldelta(a, x) != eval_ldelta(b, x)) return false;
        size_t i = 0;
        while (i < (size_t)n && ++x[i] > bound) x[i++] = 0;
        if (i == (size_t)n) return true;
    }
}

}  // namespace

TEST_CASE("evaluation examples") {
    CHECK(eval_ldelta(parse_ldelta("(mod x1 2 0)"), {4}));
    CHECK(!eval_ldelta(parse_ldelta("(lt (S 2 x1) x2)"), {3, 5}));
    CHECK(eval_ldelta(parse_ldelta("(lt (S 2 x1) x2)"), {3, 6}));
    CHECK(eval_ldelta(parse_ldelta("(and (mod x1 2 1) (lt (S 2 x1) x2))"), {3, 6}));
    CHECK(!eval_ldelta(parse_ldelta("(and (mod x1 2 1) (lt (S 2 x1) x2))"), {4, 9}));
    CHECK(eval_ldelta(parse_ldelta("(le x1 x2)"), {2, 2}));
    CHECK(eval_ldelta(parse_ldelta("(ge (S 1 (S 1 x1)) 5)"), {3}));
    CHECK_THROWS(parse_ldelta("(lt x1"));
    CHECK_THROWS(parse_ldelta("(mod x1 0 1)"));
    CHECK_THROWS(parse_ldelta("(foo x1)"));
    CHECK_THROWS(parse_ldelta("(eq x0 1)"));
}

TEST_CASE("printing and parsing round trip") {
    std::mt19937 rng(3);
    for (int it = 0; it < 200; ++it) {
        TF t = random_tf(rng, 3, 1 + rng() % 4, 3, true);
        LFormula f = parse_ldelta(t.text());
        CHECK(f.str() == t.text());
        CHECK(parse_ldelta(f.str()) == f);
    }
}

TEST_CASE("evaluation agrees with a separate evaluator") {
    std::mt19937 rng(4);
    for (int it = 0; it < 100; ++it) {
        TF t = random_tf(rng, 3, 1 + rng() % 4, 3, true);
        LFormula f = parse_ldelta(t.text());
        for (int k = 0; k < 100; ++k) {
            std::vector<long long> x = {(long long)(rng() % 20), (long long)(rng() % 20), (long long)(rng() % 20)};
            CHECK(eval_ldelta(f, x) == t.eval(x));
        }
    }
}

TEST_CASE("normalization keeps meaning and atom shapes") {
    std::mt19937 rng(5);
    for (int it = 0; it < 100; ++it) {
        TF t = random_tf(rng, 3, 1 + rng() % 4, 3, true);
        LFormula f = parse_ldelta(t.text());
        LFormula g = normalize_ldelta(f);
        for (int k = 0; k < 500; ++k) {
            std::vector<long long> x = {(long long)(rng() % 15), (long long)(rng() % 15), (long long)(rng() % 15)};
            CHECK(eval_ldelta(g, x) == eval_ldelta(f, x));
        }
        std::function<void(const LFormula&)> shape = [&](const LFormula& h) {
            using K = LFormula::Kind;
            if (h.kind == K::Mod) {
                CHECK(h.a.var >= 0);
                CHECK(h.a.e == 0);
                CHECK((h.K >= 0 && h.K < h.delta));
            }
            if (h.kind == K::Eq) {
                CHECK(h.a.var >= 0);
                CHECK((h.b.var < 0 || h.b.e == 0));
                if (h.b.var < 0) CHECK(h.a.e == 0);
                if (h.b.var >= 0) CHECK(h.a.var != h.b.var);
            }
            if (h.kind == K::Lt) {
                CHECK(h.a.var >= 0);
                CHECK(h.b.var >= 0);
                CHECK(h.b.e == 0);
                CHECK(h.a.var != h.b.var);
            }
            for (auto& k : h.kids) shape(k);
        };
        shape(g);
    }
    auto p = ldelta_params(normalize_ldelta(parse_ldelta("(and (mod x1 4 1) (lt (S 5 x1) x2) (mod x2 2 0))")));
    CHECK(p.M == 6);
    CHECK(p.delta == 4);
}

TEST_CASE("rewriter examples") {
    auto lt = ldelta_rewrite(parse_ldelta("(lt x1 x2)"));
    REQUIRE(lt.ladder);
    CHECK(!lt.formula);
    CHECK(lt.ladder->N == 5);
    CHECK(verify_witness(parse_ldelta("(lt x1 x2)"), *lt.ladder));

    auto eq = ldelta_rewrite(parse_ldelta("(eq x1 x2)"));
    REQUIRE(eq.formula);
    CHECK(eq.formula->str() == "(eq x1 x2)");

    // order split that carries no information
    auto f = parse_ldelta("(and (mod x1 2 0) (mod x2 2 1) (or (lt x1 x2) (not (lt x1 x2))))");
    auto r = ldelta_rewrite(f);
    REQUIRE(r.formula);
    CHECK(!r.formula->has_order());
    CHECK(equivalent_below(*r.formula, f, 2, 50));

    // odd x1 below an even x2: the order matters
    auto g = parse_ldelta("(and (mod x1 2 1) (lt x1 x2) (mod x2 2 0))");
    auto s = ldelta_rewrite(g);
    REQUIRE(s.ladder);
    CHECK(verify_witness(g, *s.ladder));
    // with a bounded gap the order is decided by equalities
    auto h = parse_ldelta("(and (lt x1 x2) (lt x2 (S 3 x1)))");
    auto u = ldelta_rewrite(h);
    REQUIRE(u.formula);
    CHECK(!u.formula->has_order());
    CHECK(equivalent_below(*u.formula, h, 2, u.small_model_bound()));

    auto w = ldelta_rewrite(parse_ldelta("(lt x2 x1)"), 3);
    REQUIRE(w.ladder);
    CHECK(w.ladder->N == 3);
    CHECK(verify_witness(parse_ldelta("(lt x2 x1)"), *w.ladder));
}

TEST_CASE("rewriter on random formulas") {
    std::mt19937 rng(6);
    int stable = 0, unstable = 0;
    for (int it = 0; it < 100; ++it) {
        int n = 1 + rng() % 3;
        TF t = random_tf(rng, n, 1 + rng() % 4, 2 + rng() % 2, rng() % 3 != 0);
        LFormula f = parse_ldelta(t.text());
        auto r = ldelta_rewrite(f, 5, n);
        CHECK((bool)r.formula != (bool)r.ladder);
        if (r.formula) {
            ++stable;
            CHECK(!r.formula->has_order());
            long long B = r.small_model_bound();
            CHECK(equivalent_below(*r.formula, f, n, B));
        } else {
            ++unstable;
            CHECK(verify_witness(f, *r.ladder));
        }
    }
    CHECK(stable > 5);
    CHECK(unstable > 5);
}

TEST_CASE("locus containment") {
    Locus a;
    a.zero = {-1, -1};
    a.groups = {{{0}, {0}, 1}, {{1}, {0}, 0}};
    Locus b;
    b.zero = {3, -1};
    b.groups = {{{1}, {0}, 0}};
    Locus c;
    c.zero = {-1, -1};
    c.groups = {{{0, 1}, {0, 3}, 1}};
    CHECK(a.includes(b, 2));
    CHECK(a.includes(c, 2));
    CHECK(!b.includes(a, 2));
    CHECK(!c.includes(a, 2));
    CHECK(a.contains({5, 8}, 2));
    CHECK(!a.contains({4, 8}, 2));
    CHECK(c.contains({5, 8}, 2));
    CHECK(!c.contains({5, 9}, 2));
}
