// Presburger descriptions of pumped-word membership.
#pragma once

#include "autostab/autoset.hpp"
#include "autostab/value_reader.hpp"

#include <functional>

namespace autostab {

// something that reads letters one at a time
class Machine {
public:
    virtual ~Machine() = default;
    virtual int start() = 0;
    virtual int step(int q, const Letter& l) = 0;
    virtual bool accepting(int q) = 0;
    int run(int q, const Word& w);
};

class DfaMachine : public Machine {
public:
    explicit DfaMachine(const Dfa& A);
    int start() override { return A_.start; }
    int step(int q, const Letter& l) override;
    bool accepting(int q) override { return A_.final(q); }
    const Dfa& dfa() const { return A_; }

private:
    Dfa A_;
    LetterIndex idx_;
};

// reads y, accepting iff offset + d^shift [y] lies in the set
class ReaderMachine : public Machine {
public:
    ReaderMachine(const AutoSet& A, Tuple offset, size_t shift = 0);
    int start() override { return r_.start(); }
    int step(int q, const Letter& l) override { return r_.step(q, l); }
    bool accepting(int q) override { return r_.accepting(q); }

private:
    ValueReader r_;
};

struct ReachProfile {
    int q = 0;
    long long N = 0, mu = 1;
    std::vector<int> states;   // delta(q, sigma^t) for t < N + mu
    int at(long long t) const;
};
ReachProfile reach_profile(Machine& M, int q, const Word& sigma);
ReachProfile reach_profile(const Dfa& A, int q, const Word& sigma);

// eventually periodic subset of N: finite part below N, residues mod mu from N on
struct Eps {
    long long N = 0;
    long long mu = 1;
    std::vector<long long> finite;   // sorted, all < N
    std::vector<char> res;           // size mu, indexed by x mod mu

    static Eps single(long long v);
    static Eps from(long long N, long long r, long long mu);   // {x >= N : x = r mod mu}
    static Eps naturals();
    bool contains(long long x) const;
    Eps with(long long N2, long long mu2) const;               // same set, threshold N2 >= N, mu | mu2
    long long max_constant() const;                            // largest finite value or threshold
    std::string str(const std::string& t) const;
};

struct LinearTerm {
    std::vector<long long> coef;
    long long c = 0;
    static LinearTerm var(int n, int i);
    static LinearTerm zero(int n);
    long long eval(const std::vector<long long>& t) const;
    LinearTerm operator+(const LinearTerm& o) const;
    LinearTerm operator-(const LinearTerm& o) const;
    bool operator<(const LinearTerm& o) const { return std::tie(coef, c) < std::tie(o.coef, o.c); }
    bool operator==(const LinearTerm& o) const { return coef == o.coef && c == o.c; }
    std::string str(const std::vector<std::string>& names) const;
};

// layered DAG; a tuple satisfies the predicate iff some path from the root to an accepting
// node has every edge condition (term in set) true.
struct ExponentPredicate {
    struct Cond {
        LinearTerm term;
        Eps set;
    };
    struct Edge {
        std::vector<Cond> conds;
        int to = 0;
    };
    struct Node {
        bool accept = false;
        std::vector<Edge> out;
    };
    int nvars = 0;
    std::vector<std::string> names;
    std::vector<Node> nodes;
    int root = 0;

    static ExponentPredicate constant(int nvars, bool v);
    bool eval(const std::vector<long long>& t) const;
    long long modulus() const;     // lcm of all periods
    long long threshold() const;   // largest threshold; all finite values lie below it
    void normalize();              // one global modulus and threshold
    void prune();                  // drop nodes that cannot accept
    size_t edge_count() const;
    std::string str() const;
};
ExponentPredicate disjoin(const std::vector<ExponentPredicate>& ps);

// { (t_1..t_n) : sigma_1^{T_1} ... sigma_n^{T_n} accepted }, where T_i = terms[i] (default t_i)
ExponentPredicate power_membership(Machine& M, const std::vector<Word>& sigmas,
                                   const std::vector<LinearTerm>& terms = {}, int nvars = -1);
ExponentPredicate power_membership(const Dfa& A, const std::vector<Word>& sigmas);

// track i reads l_{i1}^{k_{i1}} ... l_{i n_i}^{k_{i n_i}}, tracks padded with zeroes on the right.
// Variables are numbered track by track.
ExponentPredicate padded_power_membership(Machine& M, const std::vector<std::vector<BigInt>>& patterns);
ExponentPredicate padded_power_membership(const Dfa& A, const std::vector<std::vector<BigInt>>& patterns);

// { (k_1..k_n) : (d^{k_1}, ..., d^{k_n}) in X },  X inside N^n
ExponentPredicate powers_relation(const AutoSet& X);

nlohmann::json to_json(const ExponentPredicate& p);

}  // namespace autostab
