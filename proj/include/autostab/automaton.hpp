// Finite automata over finite alphabets of integer letters.
#pragma once

#include "autostab/digits.hpp"

#include <map>
#include "json.hpp"
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace autostab {

using IndexWord = std::vector<int>;

struct Dfa {
    int base = 2;                 // numeration base used when letters are read as digits
    std::vector<Letter> alphabet;
    int n = 0;
    int start = 0;
    std::vector<char> fin;
    std::vector<int> delta;       // n * k, row-major by state

    int k() const { return (int)alphabet.size(); }
    int next(int q, int a) const { return delta[(size_t)q * alphabet.size() + a]; }
    int& at(int q, int a) { return delta[(size_t)q * alphabet.size() + a]; }
    bool final(int q) const { return fin[q] != 0; }
    int add_state(bool f);        // new state with all transitions to itself
    int run(int q, const IndexWord& w) const;
    bool accepts(const IndexWord& w) const { return final(run(start, w)); }
    void validate() const;
};

struct Nfa {
    int base = 2;
    std::vector<Letter> alphabet;
    int n = 0;
    std::vector<int> starts;
    std::vector<char> fin;
    std::vector<std::vector<int>> delta;   // n * k target lists

    int k() const { return (int)alphabet.size(); }
    const std::vector<int>& next(int q, int a) const { return delta[(size_t)q * alphabet.size() + a]; }
    std::vector<int>& at(int q, int a) { return delta[(size_t)q * alphabet.size() + a]; }
    int add_state(bool f);
    bool accepts(const IndexWord& w) const;
};

class LetterIndex {
public:
    explicit LetterIndex(const std::vector<Letter>& alphabet);
    std::optional<int> find(const Letter& l) const;
    int at(const Letter& l) const;   // throws for letters outside the alphabet
private:
    std::map<Letter, int> m_;
};

IndexWord encode(const std::vector<Letter>& alphabet, const Word& w);
Word decode(const std::vector<Letter>& alphabet, const IndexWord& w, int d);

bool accepts(const Dfa& A, const Word& w);

Nfa to_nfa(const Dfa& A);
Dfa determinize(const Nfa& N);
Dfa minimize(const Dfa& A);
Dfa trim(const Dfa& A);
Dfa reachable_part(const Dfa& A);

Dfa complement(const Dfa& A);
Dfa intersection(const Dfa& A, const Dfa& B);
Dfa unite(const Dfa& A, const Dfa& B);
Dfa difference(const Dfa& A, const Dfa& B);
Dfa symmetric_difference(const Dfa& A, const Dfa& B);

bool is_empty(const Dfa& A);
bool equivalent(const Dfa& A, const Dfa& B);
std::optional<IndexWord> shortest_accepted(const Dfa& A, int from = -1);
std::optional<IndexWord> shortest_path(const Dfa& A, int from, int to);
std::optional<IndexWord> distinguishing_word(const Dfa& A, int p, int q);

std::vector<char> reachable_mask(const Dfa& A, int from = -1);
std::vector<char> coreachable_mask(const Dfa& A);
std::vector<char> live_mask(const Dfa& A);   // reachable and co-reachable

BigInt count_words(const Dfa& A, size_t n);

int pumping_length(const Dfa& A);
struct Pumped {
    Word u, v, w;
};
Pumped pump_decompose(const Dfa& A, const Word& w);

// Bounded-language decomposition u0 w1* u1 ... wn* un
struct BoundedExpr {
    std::vector<Word> u;   // n+1 words
    std::vector<Word> w;   // n cycle words
};
struct Sparse {
    std::vector<BoundedExpr> components;
};
struct NotSparse {
    Word x, y1, y2, z;
    int state = -1;
};
using SparsityVerdict = std::variant<Sparse, NotSparse>;

SparsityVerdict is_sparse(const Dfa& A);
bool sparse(const Dfa& A);

Dfa loop_language(const Dfa& A, int q);

struct SuffixWitness {
    long long r = 0, s = 1;
    Word tau;
};
std::optional<SuffixWitness> forbidden_suffix_witness(const Dfa& A);

// alphabet surgery
Dfa restrict_alphabet(const Dfa& A, const std::vector<int>& keep, std::vector<Letter> relabel);
Dfa relabel(const Dfa& A, std::vector<Letter> letters);
Dfa with_start(const Dfa& A, int q);
Dfa with_finals(const Dfa& A, const std::vector<char>& fin);

// words built from the alphabet
Dfa universal_dfa(const std::vector<Letter>& alphabet, int base);
Dfa empty_dfa(const std::vector<Letter>& alphabet, int base);

nlohmann::json to_json(const Dfa& A);
Dfa dfa_from_json(const nlohmann::json& j);
std::string to_dot(const Dfa& A, const std::string& name = "A");

nlohmann::json letter_to_json(const Letter& l);
Letter letter_from_json(const nlohmann::json& j);
nlohmann::json big_to_json(const BigInt& x);
BigInt big_from_json(const nlohmann::json& j);

}  // namespace autostab
