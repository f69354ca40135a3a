// Quantifier-free formulas over (N, 0, S, congruences, <) and the order-elimination rewriter.
#pragma once

#include "json.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace autostab {

// S^e x_var, or the constant e when var < 0
struct LTerm {
    int var = -1;
    long long e = 0;
    static LTerm x(int i, long long e = 0) { return {i, e}; }
    static LTerm k(long long c) { return {-1, c}; }
    bool operator==(const LTerm& o) const { return var == o.var && e == o.e; }
};

struct LFormula {
    enum class Kind { True, False, Mod, Eq, Lt, Not, And, Or };
    Kind kind = Kind::True;
    LTerm a, b;               // Eq, Lt: a = b, a < b;  Mod: a = K (mod delta)
    long long K = 0, delta = 1;
    std::vector<LFormula> kids;

    static LFormula truth(bool v);
    static LFormula mod(LTerm a, long long delta, long long K);
    static LFormula eq(LTerm a, LTerm b);
    static LFormula lt(LTerm a, LTerm b);
    static LFormula neg(LFormula f);
    static LFormula all(std::vector<LFormula> fs);
    static LFormula any(std::vector<LFormula> fs);

    bool has_order() const;
    int arity() const;       // 1 + largest variable index
    size_t size() const;     // node count
    std::string str() const;
    bool operator==(const LFormula& o) const;
};

LFormula parse_ldelta(std::string_view text);
bool eval_ldelta(const LFormula& f, const std::vector<long long>& x);

// atoms become x = K, S^e x = y, S^e x < y, x = K (mod delta) with 0 <= K < delta
LFormula normalize_ldelta(const LFormula& f);
struct LdeltaParams {
    long long M = 1;       // all K, e of the normalized atoms are < M
    long long delta = 1;   // lcm of the moduli
};
LdeltaParams ldelta_params(const LFormula& normalized);

// phi(rows[i] on left, cols[j] on right) holds iff i <= j
struct LadderWitness {
    int N = 0;
    int nvars = 0;
    std::vector<int> left, right;
    std::vector<std::vector<long long>> rows, cols;
    std::vector<long long> combine(size_t i, size_t j) const;
};
bool verify_witness(const LFormula& f, const LadderWitness& w);

// ---- loci: where the truth of an order formula is decided ----

// Variables tied to 0 carry exact values; the others form groups whose smallest member
// (offset 0) is free in a residue class mod delta.
struct Locus {
    struct Group {
        std::vector<int> vars;
        std::vector<long long> off;
        long long res = 0;
        long long span() const;
    };
    std::vector<long long> zero;   // per variable: exact value, or -1
    std::vector<Group> groups;

    int nvars() const { return (int)zero.size(); }
    std::string key() const;
    bool contains(const std::vector<long long>& x, long long delta) const;
    bool includes(const Locus& sub, long long delta) const;   // sub is a subset
    LFormula formula(long long delta) const;
    long long zero_max() const;
};

struct LocusExpr;
using LocusExprPtr = std::shared_ptr<const LocusExpr>;   // null is the empty set
struct LocusExpr {
    enum class Kind { Locus, Union, Minus };
    Kind kind = Kind::Locus;
    Locus locus;
    std::vector<LocusExprPtr> kids;   // Minus: kids[0] \ kids[1]
};
bool locus_expr_contains(const LocusExprPtr& e, const std::vector<long long>& x, long long delta);
LFormula locus_expr_formula(const LocusExprPtr& e, long long delta);
size_t locus_expr_size(const LocusExprPtr& e);

using TupleOracle = std::function<bool(const std::vector<long long>&)>;

// Truth of X must depend only on exact values below the 0-group, on group offsets, on
// residues mod delta and on the order of groups spaced at least M apart.
struct StabilityAnalysis {
    bool stable = false;
    LocusExprPtr good;                     // stable: X as a union/difference of loci
    std::optional<LadderWitness> ladder;   // unstable
    size_t loci = 0;
};
StabilityAnalysis analyze_stability(int nvars, long long M, long long delta, const TupleOracle& X, int N = 5);

struct RewriteResult {
    std::optional<LFormula> formula;
    std::optional<LadderWitness> ladder;
    LdeltaParams params;
    size_t loci = 0;
    long long small_model_bound() const;   // M + 4 delta (n + 2)
    int nvars = 0;
};
RewriteResult ldelta_rewrite(const LFormula& f, int N = 5, int nvars = -1);

nlohmann::json to_json(const LadderWitness& w);

}  // namespace autostab
