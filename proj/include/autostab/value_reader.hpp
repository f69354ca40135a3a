// Reading an automaton "by value": a lazily determinized transducer
// accepting y iff some x in L(src) has [x] = P + d^L [y].
#pragma once

#include "autostab/automaton.hpp"

#include <map>
#include <unordered_map>

namespace autostab {

class ValueReader {
public:
    ValueReader(const Nfa& src, int d, Tuple offset, size_t shift);
    ValueReader(const Dfa& src, int d, Tuple offset, size_t shift);

    int start() const { return start_; }
    int step(int s, const Letter& y);
    int step(int s, int letter_id);
    int letter_id(const Letter& y);
    bool accepting(int s);
    int dead() { return intern_subset({}); }
    size_t subsets() const { return subsets_.size(); }

    // full subset construction over a target alphabet
    Dfa explore(const std::vector<Letter>& alphabet, size_t state_limit = 2000000);

private:
    struct Node {
        int q;          // src state, or -1 once x has ended (reads zeroes)
        Tuple carry;
    };
    int intern_node(int q, const Tuple& c);
    int intern_subset(std::vector<int> s);
    void node_step(int node, const Letter& y, std::vector<int>& out);
    bool node_accepting(int node);

    Nfa src_;
    int d_;
    int dim_;
    std::vector<std::vector<int>> by_residue_;   // residue key -> src letter indices
    std::vector<std::vector<int>> residues_;     // per src letter, its residue vector
    std::map<std::pair<int, Tuple>, int> node_id_;
    std::vector<Node> nodes_;
    std::vector<signed char> node_acc_;          // -1 unknown, 0/1
    struct VecHash {
        size_t operator()(const std::vector<int>& v) const;
    };
    std::unordered_map<std::vector<int>, int, VecHash> subset_id_;
    std::vector<std::vector<int>> subsets_;
    std::vector<signed char> subset_acc_;
    std::map<Letter, int> letters_;
    std::vector<Letter> letter_list_;
    std::vector<std::vector<int>> trans_;        // [subset][letter id] -> subset, -1 unknown
    int start_ = 0;

    int residue_key(const std::vector<long long>& r) const;
};

}  // namespace autostab
