// Symbolic F-set pieces: C(a;delta), translates of finite sums, cosets, Boolean trees.
#pragma once

#include "autostab/autoset.hpp"

#include <map>

namespace autostab {

// C(a;delta) = { a + d^delta a + ... + d^{n delta} a : n >= 0 }
struct CycleSet {
    Tuple a;
    long long delta = 1;
    int d = 2;
};

std::vector<Tuple> cycle_elements(const CycleSet& C, size_t n);
Word cycle_word_form(const CycleSet& C);     // |sigma| = delta, [sigma] = a
AutoSet cycle_autoset(const CycleSet& C);

// carry stabilization: [sigma^{N+k}] = [u v^k w] for k >= 0
struct CycleRegex {
    Word u, v, w;
    size_t N = 1;
    std::vector<BigInt> carries;      // b_1 .. b_N
    std::vector<BigInt> exceptions;   // [sigma^n], 1 <= n < N
};
CycleRegex cycle_to_regex(const CycleSet& C);

// gamma + [u v^{N+k} w] = [x y^k z] for k >= 0
struct TranslatedRegex {
    Word x, y, z;
    size_t N = 0;
    bool rewritten = false;              // went through the (d-1)* rewriting
    std::vector<BigInt> exceptions;      // gamma + [u v^k w], k < N
};
TranslatedRegex translate_regex(const BigInt& gamma, const Word& u, const Word& v, const Word& w);

AutoSet coset_automaton(const BigInt& r, const BigInt& s, int d);

// b + sum of cycles; no cycles means the singleton {b}
struct FTerm {
    Tuple b;
    std::vector<CycleSet> cycles;
};
struct GrouplessFSet {
    std::vector<FTerm> components;
};

// Boolean tree in negation normal form; leaves are terms or cosets
struct FSetDescription {
    enum class Kind { Term, Coset, Union, Inter };
    Kind kind = Kind::Union;   // empty union is the empty set
    bool negated = false;      // leaves only
    FTerm term;
    BigInt r = 0, s = 1;
    std::vector<FSetDescription> kids;
    int d = 2;
    int dim = 1;

    static FSetDescription empty(int d, int dim = 1);
    static FSetDescription full(int d, int dim = 1);
    static FSetDescription leaf(FTerm t, int d);
    static FSetDescription coset(BigInt r, BigInt s, int d);
    static FSetDescription unite(std::vector<FSetDescription> xs);
    static FSetDescription meet(std::vector<FSetDescription> xs);
    static FSetDescription from_groupless(const GrouplessFSet& g, int d, int dim);
    FSetDescription complemented() const;   // pushes negation to the leaves
    FSetDescription translated(const Tuple& c) const;
    std::string str() const;
    size_t leaf_count() const;
};

AutoSet fset_to_autoset(const FSetDescription& F);
AutoSet fset_to_autoset(const GrouplessFSet& G, int d, int dim);

// bounded symbolic enumeration; exponents n with |element| <= cap are used
bool fset_member(const FSetDescription& F, const Tuple& x, const BigInt& cap);

nlohmann::json to_json(const CycleSet& C);
nlohmann::json to_json(const FSetDescription& F);
FSetDescription fset_from_json(const nlohmann::json& j);

}  // namespace autostab
