// Set expressions: the input language of the command line tool.
//
//   expr  := sum (op sum)*          op: | union, & intersection, \ difference, ^ symmetric difference
//   sum   := unary ('+' unary)*     Minkowski sum
//   unary := '~' unary | '-' unary | atom
//   atom  := '(' expr ')' | '{' int, ... '}' | name args
//
// names: powers() naturals() empty() full() C(a;delta) coset(r,s) re(regex) re[d=k](regex)
//        corpus(name) trans(b, expr) compl(expr) negate(expr) union(e, ...) inter(e, ...) diff(e, e)
// Regexes range over the digits 0-9, a-z (digit 10-35); '.' is any digit, [..] a class,
// * + ? | and parentheses as usual.  re(L) is { [w] : w in L }.
#pragma once

#include "autostab/autoset.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace autostab {

struct SyntaxError : std::runtime_error {
    size_t line, col;
    SyntaxError(const std::string& msg, size_t line_, size_t col_);
};

struct SetExpr {
    std::string op;              // name, or | & \ ^ + ~ neg set
    std::vector<SetExpr> kids;
    std::vector<BigInt> nums;
    std::string text;            // regex body or corpus name
    int base = 0;                // re[d=k]
    std::string str() const;
};

SetExpr parse_set_expr(std::string_view text);
AutoSet eval_set_expr(const SetExpr& e, int d);
AutoSet eval_set_expr(std::string_view text, int d);

Nfa regex_nfa(std::string_view re, int d);    // over digit_alphabet(d, 1)
AutoSet regex_set(std::string_view re, int d);

}  // namespace autostab
