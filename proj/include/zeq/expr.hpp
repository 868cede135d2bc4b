#ifndef ZEQ_EXPR_HPP
#define ZEQ_EXPR_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <zeq/poly.hpp>
#include <zeq/scalar.hpp>

namespace zeq
{

struct SourcePos {
    int line = 1;
    int column = 1;
};

// Parse tree. Numbers are nonnegative rationals; negation is its own node.
struct Expr {
    enum class Kind { number, variable, add, sub, mul, neg, pow };

    Kind kind = Kind::number;
    mpq_class value;
    std::string name;
    unsigned exponent = 0;
    std::vector<Expr> args;
    SourcePos pos;

    static Expr number(mpq_class v);
    static Expr variable(std::string n);
    static Expr binary(Kind k, Expr a, Expr b);
    static Expr negate(Expr a);
    static Expr power(Expr base, unsigned k);

    // Structural equality; source positions are ignored.
    friend bool operator==(const Expr &a, const Expr &b);
};

// Grammar, loosest first:
//   sum     := product (('+' | '-') product)*
//   product := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' integer)?
//   atom    := integer ('/' integer)? | name | '(' sum ')'
// '#' starts a comment running to the end of the line.
Expr parse_expr(const std::string &text);

// Inverse of parse_expr up to source positions.
std::string print_expr(const Expr &e);

// Value of a parsed expression. `symbols` maps every admissible name to its
// value; anything else is reported with its source position.
Poly to_poly(const Expr &e, const std::map<std::string, Poly> &symbols, int nvars);

// Expression whose value is p, terms in ascending graded order.
Expr from_poly(const Poly &p, const std::vector<std::string> &names);

// A top-level product of powers: constant factors collect in `unit`.
struct FactoredExpr {
    Scalar unit{1};
    std::vector<std::pair<Expr, int>> factors;
};

FactoredExpr split_factors(const Expr &e);

} // namespace zeq

#endif
