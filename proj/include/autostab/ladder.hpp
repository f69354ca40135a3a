// N-ladders for relations built from membership in a set.
#pragma once

#include "autostab/digits.hpp"

#include "json.hpp"
#include <functional>
#include <vector>

namespace autostab {

// Boolean combination of atoms  x[row] + y[col] + offset in A   (or in r + sZ)
struct Relation {
    enum class Op { Atom, Coset, Not, And, Or, Xor };
    Op op = Op::Atom;
    int row = 0, col = 0;
    Tuple offset;                 // empty means zero
    BigInt r = 0, s = 1;          // coset atoms (dim 1)
    std::vector<Relation> kids;

    static Relation atom(int row = 0, int col = 0, Tuple offset = {});
    static Relation coset(BigInt r, BigInt s, int row = 0, int col = 0, Tuple offset = {});
    static Relation neg(Relation x);
    static Relation all(std::vector<Relation> xs);
    static Relation any(std::vector<Relation> xs);
    static Relation exclusive(Relation a, Relation b);

    bool plain() const { return op == Op::Atom && row == 0 && col == 0 && offset.empty(); }
    int arity_rows() const;
    int arity_cols() const;
    bool eval(const std::vector<Tuple>& x, const std::vector<Tuple>& y,
              const std::function<bool(const Tuple&)>& member) const;
    std::string str() const;
};

struct Ladder {
    int N = 0;
    std::vector<std::vector<Tuple>> rows;   // a_0..a_N, each a tuple of components
    std::vector<std::vector<Tuple>> cols;   // b_0..b_N
    Relation relation = Relation::atom();

    // scalar convenience for plain dim-1 ladders
    static Ladder plain(const std::vector<BigInt>& a, const std::vector<BigInt>& b);
    Ladder negated() const;   // rows, cols and offsets multiplied by -1
};

struct LadderCheck {
    bool ok = false;
    std::vector<std::vector<char>> bits;   // relation(a_i, b_j)
};
LadderCheck verify_ladder(const Ladder& L, const std::function<bool(const Tuple&)>& member);

nlohmann::json to_json(const Relation& r);
Relation relation_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Ladder& L, const LadderCheck* check = nullptr);
Ladder ladder_from_json(const nlohmann::json& j);

}  // namespace autostab
