#include "doctest.h"

#include "autostab/nongen.hpp"

using namespace autostab;

namespace {

// rows "abc|def|..." : next state per digit; state 0 starts and is the only final state
Dfa loop_dfa(int d, const std::string& table) {
    Dfa A;
    A.base = d;
    A.alphabet = digit_alphabet(d, 1);
    std::vector<std::string> rows{""};
    for (char c : table) {
        if (c == '|') rows.emplace_back();
        else rows.back() += c;
    }
    for (size_t q = 0; q < rows.size(); ++q) A.add_state(q == 0);
    for (size_t q = 0; q < rows.size(); ++q)
        for (int a = 0; a < d; ++a) A.at((int)q, a) = rows[q][(size_t)a] - '0';
    A.start = 0;
    return A;
}

int run(const Dfa& A, const std::vector<int>& w) {
    int q = A.start;
    for (int x : w) q = A.next(q, x);   // digit alphabet is 0..d-1 in order
    return q;
}

// length-K digits of v, or empty when v does not fit
std::optional<std::vector<int>> fixed(BigInt v, int d, size_t K) {
    if (v < 0) return std::nullopt;
    std::vector<int> w;
    for (size_t i = 0; i < K; ++i) {
        w.push_back((int)(v % d));
        v /= d;
    }
    if (v != 0) return std::nullopt;
    return w;
}

// no word of L with length in r + sN (up to maxlen) ends in tau; the class holds words of many lengths
void check_witness(const Dfa& A, const SuffixWitness& w, int maxlen) {
    maxlen = std::max<int>(maxlen, (int)(w.r + 2 * w.s));
    int d = A.base;
    std::vector<int> tau;
    for (auto& l : w.tau.letters) tau.push_back((int)l[0]);
    int lengths_hit = 0;
    for (int len = std::max<long long>(0, w.r); len <= maxlen; len += (int)w.s) {
        bool any = false;
        std::vector<int> x((size_t)len, 0);
        while (true) {
            if (A.final(run(A, x))) {
                any = true;
                bool ends = (size_t)len >= tau.size() && std::equal(tau.begin(), tau.end(), x.end() - (long)tau.size());
                CHECK(!ends);
            }
            size_t i = 0;
            while (i < x.size() && ++x[i] == d) x[i++] = 0;
            if (i == x.size()) break;
        }
        lengths_hit += any;
    }
    CHECK(lengths_hit >= 2);
}

void check_ladder(const Dfa& A, const NongenLadder& g) {
    REQUIRE((int)g.d.size() == g.N + 1);
    REQUIRE((int)g.e.size() == g.N + 1);
    for (int i = 0; i <= g.N; ++i)
        for (int j = 0; j <= g.N; ++j) {
            auto w = fixed(g.d[(size_t)i] + g.e[(size_t)j], A.base, g.K);
            REQUIRE(w);
            CHECK(A.final(run(A, *w)) == (i <= j));
        }
}

}  // namespace

TEST_CASE("nongen ladders on constructed loop languages") {
    struct Case {
        int d;
        std::string table, branch;
    };
    std::vector<Case> cases = {
        {3, "010|001", "strict"},
        {3, "003|131|300|103", "strict"},
        {3, "001|121|222", "equal"},
        {3, "211|122|210", "dual-strict"},
        {2, "10|20|22", "dual-equal"},
    };
    for (auto& c : cases) {
        CAPTURE(c.table);
        Dfa A = loop_dfa(c.d, c.table);
        CHECK(!sparse(A));
        auto w = forbidden_suffix_witness(minimize(A));
        REQUIRE(w);
        check_witness(A, *w, 9);
        std::string why;
        auto g = nongen_ladder(A, *w, 4, &why);
        CAPTURE(why);
        REQUIRE(g);
        CHECK(g->branch == c.branch);
        CHECK(g->N == 4);
        check_ladder(A, *g);
        CHECK(check_nongen(A, *g).ok);
    }
}

TEST_CASE("nongen ladder of size zero") {
    Dfa A = loop_dfa(3, "010|001");
    auto w = forbidden_suffix_witness(minimize(A));
    REQUIRE(w);
    auto g = nongen_ladder(A, *w, 0);
    REQUIRE(g);
    CHECK(g->d.size() == 1);
    check_ladder(A, *g);
}

TEST_CASE("binary words avoiding 11 at even lengths") {
    // state: parity of length, last digit; accept unless the length is even and the word ends in 11
    Dfa A;
    A.base = 2;
    A.alphabet = digit_alphabet(2, 1);
    // 0: even, last 0 or empty  1: odd, last 0  2: even, last 1 (one 1)  3: odd, last 1
    // 4: even, ends 11  5: odd, ends 11
    for (int q = 0; q < 6; ++q) A.add_state(q != 4);
    int next0[6] = {1, 0, 1, 0, 1, 0};
    int next1[6] = {3, 2, 5, 4, 5, 4};
    for (int q = 0; q < 6; ++q) {
        A.at(q, 0) = next0[q];
        A.at(q, 1) = next1[q];
    }
    A.start = 0;
    SuffixWitness w;
    w.r = 0;
    w.s = 2;
    w.tau = word1(2, {1, 1});
    check_witness(A, w, 10);
    std::string why;
    auto g = nongen_ladder(A, w, 4, &why);
    CAPTURE(why);
    REQUIRE(g);
    check_ladder(A, *g);
}

TEST_CASE("hypothesis failures give no ladder") {
    // sparse: 0*
    Dfa A = loop_dfa(2, "01|11");
    auto w = forbidden_suffix_witness(minimize(A));
    if (w) CHECK(!nongen_ladder(A, *w, 3));
    SuffixWitness empty;
    CHECK(!nongen_ladder(loop_dfa(3, "010|001"), empty, 3));
}

TEST_CASE("state choice and the Boolean-combination ladder") {
    for (auto [d, re] : std::vector<std::pair<int, std::string>>{{3, "ends-pm1"}, {2, "even"}, {3, "even"}}) {
        CAPTURE(re);
        // representations of A cap N, built by hand
        Dfa M;
        M.base = d;
        M.alphabet = digit_alphabet(d, 1);
        std::function<bool(const BigInt&)> inA;
        if (re == "ends-pm1") {
            // last nonzero digit is 1: state = last nonzero digit class
            for (int q = 0; q < 3; ++q) M.add_state(q == 1);
            for (int q = 0; q < 3; ++q)
                for (int a = 0; a < d; ++a) M.at(q, a) = a == 0 ? q : a == 1 ? 1 : 2;
            inA = [d](BigInt x) {
                if (x < 0) x = -x;
                int last = 0;
                while (x > 0) {
                    last = (int)(x % d);
                    x /= d;
                }
                return last == 1;
            };
        } else {
            // state = 2 * (parity of canonical length) + (parity of current length)
            Dfa R;
            R.base = d;
            R.alphabet = M.alphabet;
            for (int q = 0; q < 4; ++q) R.add_state(q / 2 == 0);
            for (int q = 0; q < 4; ++q)
                for (int a = 0; a < d; ++a) {
                    int cur = q % 2, can = q / 2;
                    int ncur = 1 - cur;
                    int ncan = a ? ncur : can;
                    R.at(q, a) = 2 * ncan + ncur;
                }
            M = R;
            inA = [d](BigInt x) {
                if (x < 0) x = -x;
                int len = 0;
                while (x > 0) {
                    ++len;
                    x /= d;
                }
                return len % 2 == 0;
            };
        }
        M.start = 0;
        M = minimize(M);
        auto c = choose_state(M);
        REQUIRE(c);
        auto g = nongen_ladder(loop_language(M, c->q), c->witness, 4);
        REQUIRE(g);
        Ladder L = phi_ladder(M, *c, *g);
        CHECK(L.N == 4);
        auto chk = verify_ladder(L, [&](const Tuple& t) { return inA(t[0]); });
        CHECK(chk.ok);
    }
}
