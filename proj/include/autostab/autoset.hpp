// Automatic subsets of Z^m with value-closed recognizers.
#pragma once

#include "autostab/automaton.hpp"
#include "autostab/ladder.hpp"

#include <functional>
#include <optional>

namespace autostab {

std::vector<Letter> signed_alphabet(int d, int dim);     // Sigma_pm^m, lexicographic
std::vector<Letter> digit_alphabet(int d, int dim);      // Sigma^m

struct AutoSet {
    int d = 2;
    int dim = 1;
    Dfa dfa;   // over signed_alphabet(d, dim), accepts every representation of each member

    bool member(const Tuple& a) const;
    bool member(const BigInt& a) const;
    bool member(long long a) const;
};

// members are {[w] : w in L(raw)}; raw may use arbitrary integer letters of the right dimension
AutoSet value_closure(const Nfa& raw, int d, int dim);
AutoSet value_closure(const Dfa& raw, int d, int dim);
// wraps a recognizer already known to be value-closed over Sigma_pm^m
AutoSet from_value_closed(const Dfa& dfa, int d, int dim);

AutoSet empty_set(int d, int dim = 1);
AutoSet full_set(int d, int dim = 1);
AutoSet finite_set(const std::vector<Tuple>& elems, int d, int dim);
AutoSet finite_set(const std::vector<BigInt>& elems, int d);
AutoSet naturals(int d);        // {0,1,2,...}
AutoSet negatives(int d);       // {...,-2,-1}

AutoSet set_union(const AutoSet& A, const AutoSet& B);
AutoSet set_intersection(const AutoSet& A, const AutoSet& B);
AutoSet set_difference(const AutoSet& A, const AutoSet& B);
AutoSet set_symdiff(const AutoSet& A, const AutoSet& B);
AutoSet set_complement(const AutoSet& A);
AutoSet negate(const AutoSet& A);
AutoSet translate(const AutoSet& A, const Tuple& c);
AutoSet translate(const AutoSet& A, const BigInt& c);
AutoSet minkowski_sum(const AutoSet& A, const AutoSet& B);
bool set_equal(const AutoSet& A, const AutoSet& B);
bool set_empty(const AutoSet& A);

// dim-1 views over Sigma = {0..d-1}
Dfa positive_language(const AutoSet& A);     // {w in Sigma* : [w] in A}
Dfa negative_language(const AutoSet& A);     // {w in Sigma* : -[w] in A}
Dfa canonical_filter(int d, int dim);         // sign-consistent words without trailing zero letter
Dfa canonical_language(const AutoSet& A);    // canonical representations of members
Dfa canonical_positive(const AutoSet& A);    // canonical reps of A cap N, over Sigma
Dfa canonical_negative(const AutoSet& A);    // canonical reps of (-A) cap N, over Sigma
bool is_sparse_set(const AutoSet& A);

// genericity
struct GenericityVerdict {
    bool generic = false;
    std::vector<long long> offsets;              // generic: union of (A + t) covers N
    std::optional<SuffixWitness> witness;        // non-generic
    long long max_gap = -1;                      // empirical, generic case
    long long gap_range = 0;                     // [0, gap_range] scanned
};
GenericityVerdict generic_in_N_language(const Dfa& sigma_lang);
GenericityVerdict is_generic_in_N(const AutoSet& A);
struct ZGenericity {
    bool generic = false;
    GenericityVerdict pos, neg;   // A cap N and (-A) cap N
};
ZGenericity is_generic_in_Z(const AutoSet& A);

// brute-force ladder search for R(x, y) = (x + y in A)
struct LadderSearchOptions {
    int N = 5;
    BigInt bound = 0;          // 0: d^12
    unsigned seed = 0;         // 0: documented deterministic order
    long long node_limit = 4000000;
    int small_box = 40;
};
std::optional<Ladder> ladder_search(const AutoSet& A, const LadderSearchOptions& opt);
// generic form over an arbitrary binary relation on integers
std::optional<Ladder> ladder_search(const std::function<bool(const BigInt&, const BigInt&)>& R,
                                    const std::vector<BigInt>& xs, const std::vector<BigInt>& ys, int N,
                                    long long node_limit, unsigned seed);

nlohmann::json to_json(const AutoSet& A);
AutoSet autoset_from_json(const nlohmann::json& j);

}  // namespace autostab
