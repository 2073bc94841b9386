#pragma once

#include <memory>
#include <string>

#include "cb/interval.hpp"

namespace cb {

// Polynomial expression in x and y.
struct Expr {
    enum class Op { x, y, constant, add, sub, mul, neg, pow };
    Op op = Op::constant;
    Interval value;      // constant enclosure
    double number = 0;   // nearest double to the constant
    std::string text;    // constant literal as written
    unsigned exponent = 0;
    std::shared_ptr<const Expr> lhs, rhs;

    Interval eval(const Interval& x, const Interval& y) const;
    double eval(double x, double y) const;
    std::string str() const;
};

using ExprPtr = std::shared_ptr<const Expr>;

// Grammar:
//   expr   := term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := atom ('^' uint)?
//   atom   := 'x' | 'y' | decimal | '(' expr ')' | '-' atom
// Throws ParseError with the byte offset of the problem.
ExprPtr parse_expr(const std::string& text);

struct VectorField {
    ExprPtr fx, fy;
    std::string source;  // canonical text, used for hashing
};

// Two expressions separated by a newline or ';'. Lines starting with '#' are
// ignored.
VectorField parse_vector_field(const std::string& text);
VectorField make_vector_field(const std::string& fx, const std::string& fy);

}  // namespace cb
