#include "autostab/corpus.hpp"
#include "autostab/expr.hpp"
#include "autostab/fsets.hpp"

#include "manifest_data.hpp"

#include <map>
#include <set>

namespace autostab {

using nlohmann::json;

namespace {

AutoSet symmetric(const AutoSet& S) { return set_union(S, negate(S)); }

void need(bool ok, const std::string& name, int d, const std::string& why) {
    if (!ok) throw std::invalid_argument("corpus: " + name + " with d = " + std::to_string(d) + ": " + why);
}

std::vector<int> digits_of(BigInt a, int d) {
    std::vector<int> r;
    while (a > 0) {
        r.push_back((int)(a % d));
        a /= d;
    }
    return r;
}

BigInt ones(int d, int n, int digit) {
    BigInt v = 0;
    for (int i = 0; i < n; ++i) v = v * d + digit;
    return v;
}

}  // namespace

const std::vector<CorpusEntry>& corpus_entries() {
    static const std::vector<CorpusEntry> entries = [] {
        std::vector<CorpusEntry> out;
        for (auto& j : json::parse(kCorpusManifest)) {
            CorpusEntry e;
            e.name = j.at("name");
            e.d = j.at("d");
            e.construction = j.at("construction");
            e.note = j.value("note", "");
            e.predicate_only = j.value("predicate_only", false);
            auto& x = j.at("expected");
            e.expected.sparse = x.at("sparse");
            e.expected.generic_in_Z = x.at("generic_in_Z");
            e.expected.verdict = x.at("verdict");
            out.push_back(e);
        }
        return out;
    }();
    return entries;
}

std::vector<std::string> corpus_names() {
    std::vector<std::string> r;
    std::set<std::string> seen;
    for (auto& e : corpus_entries())
        if (seen.insert(e.name).second) r.push_back(e.name);
    return r;
}

AutoSet corpus_build(const std::string& name, int d) {
    (void)Base{d};
    if (name == "powers") return regex_set("0*1", d);
    if (name == "naturals") return naturals(d);
    if (name == "coset-2-5") return coset_automaton(2, 5, d);
    if (name == "cycle-sum") {
        auto c5 = cycle_autoset(CycleSet{Tuple{5}, 2, d});
        auto c1 = cycle_autoset(CycleSet{Tuple{1}, 1, d});
        return translate(minkowski_sum(c5, c1), BigInt(7));
    }
    if (name == "zero-one-zero-two" || name == "zero-one-zero-two-complement") {
        need(d > 2, name, d, "the digit 2 needs d > 2");
        auto A = regex_set("0*10*2", d);
        return name == "zero-one-zero-two" ? A : set_complement(A);
    }
    if (name == "ends-pm1") {
        need(d > 2, name, d, "needs d > 2");
        return symmetric(regex_set(".*10*", d));
    }
    if (name == "no-zero-digit") {
        need(d > 2, name, d, "needs d > 2");
        return symmetric(regex_set("[^0]*", d));
    }
    if (name == "even-length") return symmetric(regex_set("((..)*.[^0])?", d));
    if (name == "baum-sweet") {
        need(d == 2, name, d, "defined in base 2");
        return symmetric(regex_set("((00)*1)*", d));
    }
    if (name == "bset") {
        need(d >= 8, name, d, "needs d >= 8");
        throw std::invalid_argument("corpus: bset is not d-automatic (its canonical representations 7^i 6^j 4^i "
                                    "form a non-regular language); use bset_member");
    }
    throw std::invalid_argument("corpus: unknown set '" + name + "'");
}

bool bset_member(const BigInt& a, int d) {
    if (d < 8) throw std::invalid_argument("bset: needs d >= 8");
    if (a < 0) return false;
    auto w = digits_of(a, d);
    // powers of d: 0...01
    bool power = !w.empty() && w.back() == 1;
    for (size_t i = 0; power && i + 1 < w.size(); ++i) power = w[i] == 0;
    if (power) return true;
    size_t i = 0, n7 = 0, n4 = 0;
    while (i < w.size() && w[i] == 7) ++i, ++n7;
    while (i < w.size() && w[i] == 6) ++i;
    while (i < w.size() && w[i] == 4) ++i, ++n4;
    return i == w.size() && n7 == n4;
}

BsetInjectivity bset_injectivity_check(int d, int bound) {
    if (d < 8) throw std::invalid_argument("bset: needs d >= 8");
    BsetInjectivity r;
    std::map<BigInt, std::array<int, 3>> seen;
    r.digit_recovery = true;
    for (int x = 0; x <= bound; ++x)
        for (int y = 0; y <= bound; ++y)
            for (int z = 0; z <= bound; ++z) {
                ++r.triples;
                BigInt v = ones(d, x, 1) + ones(d, y, 2) + ones(d, z, 4);
                auto [it, fresh] = seen.emplace(v, std::array<int, 3>{x, y, z});
                if (!fresh) {
                    ++r.collisions;
                    auto& o = it->second;
                    r.report.push_back("(" + std::to_string(x) + "," + std::to_string(y) + "," + std::to_string(z) +
                                       ") and (" + std::to_string(o[0]) + "," + std::to_string(o[1]) + "," +
                                       std::to_string(o[2]) + ")");
                }
                // every digit is a subset sum of {1, 2, 4}; count which parts are used
                int cx = 0, cy = 0, cz = 0;
                for (int g : digits_of(v, d)) {
                    if (g > 7) r.digit_recovery = false;
                    cx += g & 1;
                    cy += (g >> 1) & 1;
                    cz += (g >> 2) & 1;
                }
                if (cx != x || cy != y || cz != z) r.digit_recovery = false;
            }
    r.injective = r.collisions == 0;
    return r;
}

BsetDefinability bset_definability_check(int d, int bound) {
    if (d < 8) throw std::invalid_argument("bset: needs d >= 8");
    BsetDefinability r;
    for (int i = 0; i <= bound; ++i)
        for (int j = 0; j <= bound; ++j)
            for (int k = 0; k <= bound; ++k) {
                ++r.triples;
                BigInt a = dpow(d, i), b = dpow(d, j), c = dpow(d, k);
                bool lhs = k == i + j && a <= b;
                BigInt comb = (a - 1) / (d - 1) + 2 * ((b - 1) / (d - 1)) + 4 * ((c - 1) / (d - 1));
                bool rhs = bset_member(comb, d);
                // comb = 1 = d^0 lies in B for (i,j,k) = (1,0,0), where k != i + j
                if (lhs != (rhs && comb != 1)) ++r.repaired_failures;
                if (lhs != rhs) {
                    ++r.failures;
                    r.report.push_back("i=" + std::to_string(i) + " j=" + std::to_string(j) + " k=" +
                                       std::to_string(k));
                }
            }
    r.powers_recovered = true;
    long long box = 1;
    for (int t = 0; t < 5; ++t) box *= d;
    for (long long a = -box; a <= box; ++a) {
        long long x = a;
        while (x > 1 && x % d == 0) x /= d;
        bool pw = a > 0 && x == 1;
        bool via_b = a == 1 || (a != 0 && bset_member(a, d) && a % d == 0);
        if (pw != via_b) r.powers_recovered = false;
    }
    r.ok = r.failures == 0 && r.powers_recovered;
    r.repaired_ok = r.repaired_failures == 0 && r.powers_recovered;
    return r;
}

}  // namespace autostab
