#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "dws/errors.hpp"

namespace dws {

enum class ExprKind {
    Constant,
    Variable,
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

/// Immutable abstract syntax tree of a real-valued expression in the single
/// variable `x`.  Supports evaluation, exact symbolic differentiation and
/// grouping-exact printing (re-parsing the printed form reproduces the tree).
///
/// Grammar accepted by parse():  precedence ^ > unary minus > * / > + -,
/// with + - * / left-associative, ^ right-associative, parentheses, and
/// function calls sin( ) cos( ) exp( ) log( ) sqrt( ).  `pi` and `e` are
/// reserved named constants.  The exponent of ^ must fold to a constant.
class Expr {
  public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    Expr() = default;

    static Expr parse(std::string_view src);
    static Expr constant(double value);
    static Expr variable();

    /// Value at x.  Throws DomainError rather than returning NaN/Inf.
    double eval(double x) const;

    /// Exact symbolic derivative of the given order (constant folding only,
    /// no other simplification).
    Expr derivative(int order = 1) const;

    /// Replace the variable by another expression.
    Expr substitute_x(const Expr& replacement) const;

    std::string str() const;

    // Structural access, mainly for tests.
    ExprKind kind() const;
    int child_count() const;
    Expr child(int i) const;
    double constant_value() const;

    bool valid() const { return root_ != nullptr; }

  private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}

    NodePtr root_;

    friend class Parser;
};

}  // namespace dws
