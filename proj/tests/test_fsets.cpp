#include "doctest.h"

#include "autostab/fsets.hpp"

#include <random>
#include <set>

using namespace autostab;

namespace {

bool is_power(const BigInt& a, int d) {
    if (a < 1) return false;
    BigInt x = a;
    while (x % d == 0) x /= d;
    return x == 1;
}

BigInt uvkw(const Word& u, const Word& v, const Word& w, size_t k) { return value(concat(concat(u, power(v, k)), w)); }

bool sigma_word(const Word& w) {
    for (auto& l : w.letters)
        if (!standard_nonneg(l, w.d)) return false;
    return true;
}

}  // namespace

TEST_CASE("cycle elements") {
    for (int d : {2, 3, 10}) {
        auto e = cycle_elements(CycleSet{{d - 1}, 1, d}, 3);
        CHECK(e[0][0] == d - 1);
        CHECK(e[1][0] == d * d - 1);
        CHECK(e[2][0] == d * d * d - 1);
        // recurrence
        auto f = cycle_elements(CycleSet{{7}, 2, d}, 10);
        for (size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i + 1][0] == 7 + dpow(d, 2) * f[i][0]);
        // d^N = {1} u (1 + C(d-1;1))
        auto g = cycle_elements(CycleSet{{d - 1}, 1, d}, 8);
        for (size_t i = 0; i < g.size(); ++i) CHECK(g[i][0] + 1 == dpow(d, i + 1));
    }
    auto r = cycle_elements(CycleSet{{1}, 1, 10}, 3);
    CHECK(r == std::vector<Tuple>{{1}, {11}, {111}});
}

TEST_CASE("cycle word form") {
    for (int d : {2, 3, 10}) {
        Word s = cycle_word_form(CycleSet{{d - 1}, 1, d});
        CHECK(s == word1(d, {d - 1}));
        for (size_t n = 1; n <= 6; ++n) CHECK(value(power(s, n)) == dpow(d, n) - 1);
    }
    CHECK(cycle_word_form(CycleSet{{0}, 3, 10}) == word1(10, {0, 0, 0}));
    Word s = cycle_word_form(CycleSet{{21}, 2, 10});
    CHECK(s == word1(10, {1, 2}));
    CHECK(value(power(s, 2)) == 2121);
    // overflow and negatives, dimension 2
    std::mt19937 rng(1);
    for (int it = 0; it < 200; ++it) {
        int d = 2 + rng() % 9;
        CycleSet C{{BigInt((int)(rng() % 20001) - 10000), BigInt((int)(rng() % 2001) - 1000)}, 1 + (long long)(rng() % 3), d};
        Word w = cycle_word_form(C);
        CHECK(w.size() == (size_t)C.delta);
        auto el = cycle_elements(C, 5);
        for (size_t k = 1; k <= 5; ++k) CHECK(evaluate(power(w, k)) == el[k - 1]);
    }
}

TEST_CASE("cycle_to_regex examples") {
    for (int d : {2, 3, 10}) {
        auto R = cycle_to_regex(CycleSet{{d - 1}, 1, d});
        CHECK(R.N == 1);
        CHECK(R.u == word1(d, {d - 1}));
        CHECK(R.v == word1(d, {d - 1}));
        CHECK(R.w.empty());
        auto el = cycle_elements(CycleSet{{d - 1}, 1, d}, 12);
        for (size_t k = 0; k + 1 < 12; ++k) CHECK(uvkw(R.u, R.v, R.w, k) == el[k][0]);
    }
    auto R1 = cycle_to_regex(CycleSet{{1}, 1, 10});
    CHECK(R1.u == word1(10, {1}));
    CHECK(R1.v == word1(10, {1}));
    CHECK(R1.w.empty());
    CHECK(R1.exceptions.empty());
    auto R5 = cycle_to_regex(CycleSet{{5}, 1, 10});
    for (BigInt b : R5.carries) CHECK(b == 0);
    for (size_t k = 0; k < 6; ++k) CHECK(uvkw(R5.u, R5.v, R5.w, k) == cycle_elements(CycleSet{{5}, 1, 10}, 6)[k][0]);
    CHECK_THROWS(cycle_to_regex(CycleSet{{-5}, 1, 10}));
}

TEST_CASE("cycle_to_regex on random cycles") {
    std::mt19937 rng(2718);
    int d_choices[] = {2, 3, 10};
    for (int it = 0; it < 200; ++it) {
        int d = d_choices[rng() % 3];
        long long a = rng() % 10001;
        long long delta = 1 + rng() % 3;
        CycleSet C{{a}, delta, d};
        auto R = cycle_to_regex(C);
        CHECK(sigma_word(R.u));
        CHECK(sigma_word(R.v));
        CHECK(sigma_word(R.w));
        CHECK(R.u.size() == R.N * (size_t)delta);
        CHECK(R.v.size() == (size_t)delta);
        // carries nondecreasing and bounded by a
        for (size_t i = 0; i < R.carries.size(); ++i) {
            CHECK(R.carries[i] <= a);
            if (i) CHECK(R.carries[i] >= R.carries[i - 1]);
        }
        auto el = cycle_elements(C, R.N + 13);
        for (size_t k = 0; k <= 12; ++k) CHECK(uvkw(R.u, R.v, R.w, k) == el[R.N - 1 + k][0]);
        // exceptions are exactly the symmetric difference on the first N+12 elements
        std::set<BigInt> cyc, reg, diff;
        for (size_t n = 0; n < R.N + 12; ++n) cyc.insert(el[n][0]);
        for (size_t k = 0; k <= 12; ++k) reg.insert(uvkw(R.u, R.v, R.w, k));
        for (auto& x : cyc)
            if (!reg.count(x)) diff.insert(x);
        for (auto& x : reg)
            if (!cyc.count(x)) diff.insert(x);
        std::set<BigInt> ex(R.exceptions.begin(), R.exceptions.end());
        CHECK(diff == ex);
    }
}

TEST_CASE("translate_regex") {
    Word e(10, 1);
    auto T0 = translate_regex(0, word1(10, {1}), word1(10, {1}), e);
    CHECK(T0.N == 0);
    CHECK(T0.x == word1(10, {1}));

    // 1 + {0, 9, 99, ...} = {1, 10, 100, ...}
    auto T1 = translate_regex(1, e, word1(10, {9}), e);
    CHECK(T1.rewritten);
    for (size_t k = 0; k < 6; ++k) CHECK(uvkw(T1.x, T1.y, T1.z, k) == 1 + uvkw(e, word1(10, {9}), e, k + T1.N));
    for (size_t k = 0; k < 6; ++k) CHECK(is_power(uvkw(T1.x, T1.y, T1.z, k), 10));

    // 3 + repunits
    Word one = word1(10, {1});
    auto T3 = translate_regex(3, one, one, e);
    for (size_t k = 0; k < 8; ++k) CHECK(uvkw(T3.x, T3.y, T3.z, k) == 3 + uvkw(one, one, e, T3.N + k));
    CHECK(value(concat(T3.x, one)) == 14);

    // random instances, including the borrow and overflow situations
    std::mt19937 rng(17);
    int tested = 0;
    for (int it = 0; it < 400; ++it) {
        int d = 2 + rng() % 9;
        auto rnd = [&](size_t maxlen, bool nonempty) {
            Word w(d, 1);
            size_t len = (nonempty ? 1 : 0) + rng() % (maxlen + 1);
            int mode = rng() % 4;
            for (size_t i = 0; i < len; ++i) {
                int dig = mode == 0 ? 0 : mode == 1 ? d - 1 : (int)(rng() % d);
                w.push(Letter{BigInt(dig)});
            }
            return w;
        };
        Word u = rnd(3, false), v = rnd(2, true), w = rnd(2, false);
        BigInt g = (long long)(rng() % 2001) - 1000;
        // precondition: translate eventually nonnegative
        bool ok = true;
        for (size_t k = 40; k < 43; ++k) ok = ok && g + uvkw(u, v, w, k) >= 0;
        if (!ok) {
            CHECK_THROWS(translate_regex(g, u, v, w));
            continue;
        }
        auto T = translate_regex(g, u, v, w);
        ++tested;
        CHECK(sigma_word(T.x));
        CHECK(sigma_word(T.y));
        CHECK(sigma_word(T.z));
        for (size_t k = 0; k <= 10; ++k) CHECK(uvkw(T.x, T.y, T.z, k) == g + uvkw(u, v, w, T.N + k));
        REQUIRE(T.exceptions.size() == T.N);
        for (size_t k = 0; k < T.N; ++k) CHECK(T.exceptions[k] == g + uvkw(u, v, w, k));
    }
    CHECK(tested > 200);
}

TEST_CASE("cosets") {
    CHECK(set_equal(coset_automaton(0, 1, 10), full_set(10)));
    AutoSet C = coset_automaton(2, 5, 10);
    CHECK(C.member(17));
    CHECK(!C.member(18));
    for (int d : {2, 3, 10})
        for (int s : {1, 2, 3, 4, 6, 7, 12}) {
            AutoSet A = coset_automaton(-1, s, d);
            for (long long a = -200; a <= 200; ++a) CHECK(A.member(a) == (((a + 1) % s + s) % s == 0));
        }
}

TEST_CASE("fset_to_autoset: powers identity") {
    for (int d : {2, 3, 10}) {
        FTerm one{{1}, {}};
        FTerm rest{{1}, {CycleSet{{d - 1}, 1, d}}};
        auto F = FSetDescription::unite({FSetDescription::leaf(one, d), FSetDescription::leaf(rest, d)});
        AutoSet A = fset_to_autoset(F);
        long long D6 = 1;
        for (int i = 0; i < 6; ++i) D6 *= d;
        for (long long a = -D6; a <= D6; ++a) REQUIRE(A.member(a) == is_power(a, d));
        CHECK(is_sparse_set(A));
    }
}

TEST_CASE("fset descriptions agree with symbolic enumeration") {
    std::mt19937 rng(404);
    for (int it = 0; it < 12; ++it) {
        int d = 2 + rng() % 3;
        auto rnd_term = [&] {
            FTerm t{{BigInt((int)(rng() % 41) - 20)}, {}};
            int ns = rng() % 3;
            int sign = rng() % 2 ? 1 : -1;
            for (int i = 0; i < ns; ++i) t.cycles.push_back(CycleSet{{BigInt(sign * (int)(rng() % 60))}, 1 + (long long)(rng() % 2), d});
            return FSetDescription::leaf(t, d);
        };
        std::vector<FSetDescription> parts;
        for (int i = 0; i < 2; ++i) parts.push_back(rnd_term());
        FSetDescription F = FSetDescription::unite(parts);
        if (rng() % 2) F = FSetDescription::meet({F, FSetDescription::coset((int)(rng() % 3), 3, d).complemented()});
        if (rng() % 3 == 0) F = F.complemented();
        AutoSet A = fset_to_autoset(F);
        for (long long a = -3000; a <= 3000; ++a) REQUIRE(A.member(a) == fset_member(F, {BigInt(a)}, BigInt(1) << 40));
        // serialization round trip
        auto G = fset_from_json(nlohmann::json::parse(to_json(F).dump()));
        CHECK(G.str() == F.str());
        CHECK(set_equal(fset_to_autoset(G), A));
        // translation commutes
        AutoSet T = fset_to_autoset(F.translated({5}));
        CHECK(set_equal(T, translate(A, BigInt(5))));
    }
}

TEST_CASE("groupless F-sets are sparse") {
    std::mt19937 rng(5);
    for (int it = 0; it < 10; ++it) {
        int d = 2 + rng() % 3;
        GrouplessFSet g;
        for (int c = 0; c < 2; ++c) {
            FTerm t{{BigInt((int)(rng() % 21) - 10)}, {}};
            for (int i = 0; i < 2; ++i) t.cycles.push_back(CycleSet{{BigInt((int)(rng() % 101) - 50)}, 1 + (long long)(rng() % 2), d});
            g.components.push_back(t);
        }
        CHECK(is_sparse_set(fset_to_autoset(g, d, 1)));
    }
    // dimension 2 cycle automaton
    CycleSet C{{3, -2}, 2, 3};
    AutoSet A = cycle_autoset(C);
    auto el = cycle_elements(C, 4);
    for (auto& e : el) CHECK(A.member(e));
    CHECK(!A.member(Tuple{3, 2}));
    CHECK(!A.member(Tuple{0, 0}));
}

TEST_CASE("fset text form") {
    FTerm t{{7}, {CycleSet{{5}, 2, 10}, CycleSet{{1}, 1, 10}}};
    auto F = FSetDescription::leaf(t, 10);
    CHECK(F.str() == "trans(7, C(5;2) + C(1;1))");
    CHECK(FSetDescription::coset(2, 5, 10).complemented().str() == "compl(coset(2,5))");
    CHECK(FSetDescription::empty(10).str() == "{}");
}
