// Ladders for non-generic, non-sparse subsets of N.
#pragma once

#include "autostab/autoset.hpp"

namespace autostab {

// [d_i] + [e_j] has a length-K representation in L iff i <= j  (all sums have one)
struct NongenLadder {
    int N = 0;
    size_t K = 0;
    std::vector<BigInt> d, e;
    std::string branch;   // strict | equal | dual-strict | dual-equal
    Word a;               // the chosen suffix
};

// L over the digit alphabet with L = L*, not sparse; w: L restricted to lengths r + sN
// is infinite and avoids the suffix w.tau.  Returns nullopt if the hypotheses fail.
std::optional<NongenLadder> nongen_ladder(const Dfa& L, const SuffixWitness& w, int N, std::string* why = nullptr);
LadderCheck check_nongen(const Dfa& L, const NongenLadder& g);

// a state q of the minimal automaton M whose loop language meets the hypotheses above
struct StateChoice {
    int q = -1;
    Word mu;                // reaches q from the start
    SuffixWitness witness;  // for loop_language(M, q)
    std::string route;      // final-state | forbidden-infix
};
std::optional<StateChoice> choose_state(const Dfa& M);

// phi(x; y) = AND over q' != q of (x_q' + y in A)^{eps_q'}; M recognizes the representations of A cap N
Ladder phi_ladder(const Dfa& M, const StateChoice& c, const NongenLadder& g);

}  // namespace autostab
