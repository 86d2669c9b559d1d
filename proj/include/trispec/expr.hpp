#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "trispec/errors.hpp"
#include "trispec/trace.hpp"

namespace tri {

// Syntax or name error in a boundary-data expression; offset is a byte offset into the source.
struct ExprError : ConfigError {
    ExprError(const std::string& what, std::size_t offset);
    std::size_t offset;
};

// Grammar (lowest precedence first):
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' unary)?          right associative, so -2^2 = -4 and 2^-s parse
//   atom  := number | 's' | 'pi' | 'l' | fn '(' expr ')' | '(' expr ')'
//   fn    := sin | cos | exp | sinh | cosh | log
class Expression {
public:
    enum class Kind { NUM, S, PI, L, ADD, SUB, MUL, DIV, POW, NEG, SIN, COS, EXP, SINH, COSH, LOG };
    struct Node;
    using Ptr = std::shared_ptr<const Node>;

    Expression();  // the constant 0
    static Expression parse(const std::string& text);
    static Expression number(double v);

    double eval(double s, double l) const;
    // symbolic d/ds, lightly simplified
    Expression derivative() const;
    // fully parenthesised where needed; parse(str()) evaluates identically
    std::string str() const;
    bool depends_on_s() const;

    const Node& root() const { return *root_; }

private:
    explicit Expression(Ptr p) : root_(std::move(p)) {}
    Ptr root_;
};

struct Expression::Node {
    Kind kind;
    double value = 0.0;  // NUM only
    Ptr a, b;
};

// value and derivative of the expression on side j, with the side length bound
BoundaryTrace expression_trace(int side, const Expression& e, double l);

}  // namespace tri
