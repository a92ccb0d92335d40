#include "dws/expr.hpp"

#include <cassert>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>
#include <vector>

namespace dws {

struct Expr::Node {
    ExprKind kind;
    double value = 0.0;    // Constant
    std::string name;      // non-empty for named constants (pi, e)
    NodePtr left, right;   // unary ops use `left` only
};

namespace {

using Node = Expr::Node;
using NodePtr = Expr::NodePtr;

NodePtr make_const(double v, std::string name = {}) {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Constant;
    n->value = v;
    n->name = std::move(name);
    return n;
}

NodePtr make_var() {
    auto n = std::make_shared<Node>();
    n->kind = ExprKind::Variable;
    return n;
}

bool is_const(const NodePtr& n) { return n->kind == ExprKind::Constant; }

double eval_node(const Node& n, double x);

// Evaluate a node whose children are literal constants; returns false if the
// result would not be a finite real (the node is then kept unfolded and the
// error surfaces at eval time).
bool try_fold(const Node& n, double& out) {
    try {
        out = eval_node(n, 0.0);
    } catch (const DomainError&) {
        return false;
    }
    return std::isfinite(out);
}

NodePtr make_unary(ExprKind kind, NodePtr child) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->left = std::move(child);
    if (is_const(n->left)) {
        double v;
        if (try_fold(*n, v)) return make_const(v);
    }
    return n;
}

NodePtr make_binary(ExprKind kind, NodePtr l, NodePtr r) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->left = std::move(l);
    n->right = std::move(r);
    if (is_const(n->left) && is_const(n->right)) {
        double v;
        if (try_fold(*n, v)) return make_const(v);
    }
    return n;
}

std::string short_str(const Node& n);

[[noreturn]] void domain_fail(const Node& n, double x, const std::string& why) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    throw DomainError(why + " in '" + short_str(n) + "' at x=" + buf);
}

bool is_integer(double v) { return std::floor(v) == v && std::abs(v) < 1e15; }

double eval_node(const Node& n, double x) {
    double v = 0.0;
    switch (n.kind) {
        case ExprKind::Constant: return n.value;
        case ExprKind::Variable: return x;
        case ExprKind::Neg: return -eval_node(*n.left, x);
        case ExprKind::Sin: return std::sin(eval_node(*n.left, x));
        case ExprKind::Cos: return std::cos(eval_node(*n.left, x));
        case ExprKind::Exp:
            v = std::exp(eval_node(*n.left, x));
            if (!std::isfinite(v)) domain_fail(n, x, "overflow");
            return v;
        case ExprKind::Log:
            v = eval_node(*n.left, x);
            if (v <= 0.0) domain_fail(n, x, "log of non-positive value");
            return std::log(v);
        case ExprKind::Sqrt:
            v = eval_node(*n.left, x);
            if (v < 0.0) domain_fail(n, x, "sqrt of negative value");
            return std::sqrt(v);
        case ExprKind::Add: return eval_node(*n.left, x) + eval_node(*n.right, x);
        case ExprKind::Sub: return eval_node(*n.left, x) - eval_node(*n.right, x);
        case ExprKind::Mul: return eval_node(*n.left, x) * eval_node(*n.right, x);
        case ExprKind::Div: {
            double den = eval_node(*n.right, x);
            if (den == 0.0) domain_fail(n, x, "division by zero");
            v = eval_node(*n.left, x) / den;
            if (!std::isfinite(v)) domain_fail(n, x, "overflow");
            return v;
        }
        case ExprKind::Pow: {
            double base = eval_node(*n.left, x);
            double ex = eval_node(*n.right, x);
            if (base == 0.0 && ex < 0.0) domain_fail(n, x, "zero raised to negative power");
            if (base < 0.0 && !is_integer(ex)) domain_fail(n, x, "negative base with non-integer exponent");
            v = std::pow(base, ex);
            if (!std::isfinite(v)) domain_fail(n, x, "overflow");
            return v;
        }
    }
    assert(false);
    return 0.0;
}

// ---------------------------------------------------------------------------
// Printing.  Parenthesization is grouping-exact: re-parsing the printed text
// reproduces the tree, so evaluations round-trip bit for bit.

int precedence(const Node& n) {
    switch (n.kind) {
        case ExprKind::Add:
        case ExprKind::Sub: return 1;
        case ExprKind::Mul:
        case ExprKind::Div: return 2;
        case ExprKind::Neg: return 3;
        case ExprKind::Pow: return 4;
        case ExprKind::Constant:
            return n.value < 0.0 && n.name.empty() ? 3 : 5;  // prints with a leading '-'
        default: return 5;
    }
}

const char* fn_name(ExprKind k) {
    switch (k) {
        case ExprKind::Sin: return "sin";
        case ExprKind::Cos: return "cos";
        case ExprKind::Exp: return "exp";
        case ExprKind::Log: return "log";
        case ExprKind::Sqrt: return "sqrt";
        default: return nullptr;
    }
}

void print_node(const Node& n, std::string& out, int parent_prec, bool right_side) {
    int prec = precedence(n);
    bool parens = right_side ? prec <= parent_prec : prec < parent_prec;
    if (parens) out += '(';
    switch (n.kind) {
        case ExprKind::Constant:
            if (!n.name.empty()) {
                out += n.name;
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", n.value);
                out += buf;
            }
            break;
        case ExprKind::Variable: out += 'x'; break;
        case ExprKind::Neg:
            out += '-';
            print_node(*n.left, out, prec, true);
            break;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Mul:
        case ExprKind::Div:
        case ExprKind::Pow: {
            char op = n.kind == ExprKind::Add   ? '+'
                      : n.kind == ExprKind::Sub ? '-'
                      : n.kind == ExprKind::Mul ? '*'
                      : n.kind == ExprKind::Div ? '/'
                                                : '^';
            print_node(*n.left, out, prec, n.kind != ExprKind::Pow ? false : true);
            out += op;
            // Right operand of ^ may be a bare negative constant.
            print_node(*n.right, out, n.kind == ExprKind::Pow ? prec - 1 : prec, true);
            break;
        }
        default:
            out += fn_name(n.kind);
            out += '(';
            print_node(*n.left, out, 0, false);
            out += ')';
            break;
    }
    if (parens) out += ')';
}

std::string short_str(const Node& n) {
    std::string s;
    print_node(n, s, 0, false);
    if (s.size() > 60) s = s.substr(0, 57) + "...";
    return s;
}

// ---------------------------------------------------------------------------
// Differentiation (one order).

NodePtr diff(const NodePtr& n) {
    switch (n->kind) {
        case ExprKind::Constant: return make_const(0.0);
        case ExprKind::Variable: return make_const(1.0);
        case ExprKind::Neg: return make_unary(ExprKind::Neg, diff(n->left));
        case ExprKind::Sin:
            return make_binary(ExprKind::Mul, make_unary(ExprKind::Cos, n->left), diff(n->left));
        case ExprKind::Cos:
            return make_binary(ExprKind::Mul,
                               make_unary(ExprKind::Neg, make_unary(ExprKind::Sin, n->left)),
                               diff(n->left));
        case ExprKind::Exp:
            return make_binary(ExprKind::Mul, make_unary(ExprKind::Exp, n->left), diff(n->left));
        case ExprKind::Log: return make_binary(ExprKind::Div, diff(n->left), n->left);
        case ExprKind::Sqrt:
            // u' / (2 sqrt(u))
            return make_binary(ExprKind::Div, diff(n->left),
                               make_binary(ExprKind::Mul, make_const(2.0),
                                           make_unary(ExprKind::Sqrt, n->left)));
        case ExprKind::Add: return make_binary(ExprKind::Add, diff(n->left), diff(n->right));
        case ExprKind::Sub: return make_binary(ExprKind::Sub, diff(n->left), diff(n->right));
        case ExprKind::Mul:
            return make_binary(ExprKind::Add,
                               make_binary(ExprKind::Mul, diff(n->left), n->right),
                               make_binary(ExprKind::Mul, n->left, diff(n->right)));
        case ExprKind::Div:
            // (u'v - uv') / v^2
            return make_binary(
                ExprKind::Div,
                make_binary(ExprKind::Sub, make_binary(ExprKind::Mul, diff(n->left), n->right),
                            make_binary(ExprKind::Mul, n->left, diff(n->right))),
                make_binary(ExprKind::Pow, n->right, make_const(2.0)));
        case ExprKind::Pow: {
            // Exponent is a constant by construction: c u^(c-1) u'.  The
            // c = 0 and c = 1 cases are written out so the derivative does
            // not manufacture spurious negative powers of u.
            double c = n->right->value;
            if (c == 0.0) return make_const(0.0);
            if (c == 1.0) return diff(n->left);
            return make_binary(
                ExprKind::Mul,
                make_binary(ExprKind::Mul, make_const(c),
                            make_binary(ExprKind::Pow, n->left, make_const(c - 1.0))),
                diff(n->left));
        }
    }
    assert(false);
    return nullptr;
}

NodePtr substitute(const NodePtr& n, const NodePtr& repl) {
    switch (n->kind) {
        case ExprKind::Constant: return n;
        case ExprKind::Variable: return repl;
        default: break;
    }
    if (n->right)
        return make_binary(n->kind, substitute(n->left, repl), substitute(n->right, repl));
    return make_unary(n->kind, substitute(n->left, repl));
}

// ---------------------------------------------------------------------------
// Parsing.

struct Token {
    enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End } type;
    double number = 0.0;
    std::string text;
    std::size_t offset = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = Token{};
        tok_.offset = pos_;
        if (pos_ >= src_.size()) {
            tok_.type = Token::End;
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': tok_.type = Token::Plus; ++pos_; return;
            case '-': tok_.type = Token::Minus; ++pos_; return;
            case '*': tok_.type = Token::Star; ++pos_; return;
            case '/': tok_.type = Token::Slash; ++pos_; return;
            case '^': tok_.type = Token::Caret; ++pos_; return;
            case '(': tok_.type = Token::LParen; ++pos_; return;
            case ')': tok_.type = Token::RParen; ++pos_; return;
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = src_.data() + pos_;
            const char* end = src_.data() + src_.size();
            double value = 0.0;
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (ec != std::errc{}) throw SyntaxError("malformed number", pos_);
            tok_.type = Token::Number;
            tok_.number = value;
            pos_ += static_cast<std::size_t>(ptr - begin);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            tok_.type = Token::Ident;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            return;
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

ExprKind function_kind(const std::string& name) {
    if (name == "sin") return ExprKind::Sin;
    if (name == "cos") return ExprKind::Cos;
    if (name == "exp") return ExprKind::Exp;
    if (name == "log") return ExprKind::Log;
    if (name == "sqrt") return ExprKind::Sqrt;
    return ExprKind::Constant;  // sentinel: not a function
}

}  // namespace

class Parser {
  public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Expr run() {
        NodePtr root = parse_sum();
        const Token& t = lex_.peek();
        if (t.type != Token::End) throw SyntaxError("trailing tokens", t.offset);
        return Expr(std::move(root));
    }

  private:
    NodePtr parse_sum() {
        NodePtr lhs = parse_term();
        while (true) {
            Token::Type t = lex_.peek().type;
            if (t != Token::Plus && t != Token::Minus) return lhs;
            lex_.take();
            NodePtr rhs = parse_term();
            lhs = make_binary(t == Token::Plus ? ExprKind::Add : ExprKind::Sub, std::move(lhs),
                              std::move(rhs));
        }
    }

    NodePtr parse_term() {
        NodePtr lhs = parse_unary();
        while (true) {
            Token::Type t = lex_.peek().type;
            if (t != Token::Star && t != Token::Slash) return lhs;
            lex_.take();
            NodePtr rhs = parse_unary();
            lhs = make_binary(t == Token::Star ? ExprKind::Mul : ExprKind::Div, std::move(lhs),
                              std::move(rhs));
        }
    }

    NodePtr parse_unary() {
        if (lex_.peek().type == Token::Minus) {
            lex_.take();
            return make_unary(ExprKind::Neg, parse_unary());
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (lex_.peek().type != Token::Caret) return base;
        Token caret = lex_.take();
        NodePtr ex = parse_unary();  // right-associative, allows x^-2
        if (ex->kind != ExprKind::Constant)
            throw SyntaxError("exponent must fold to a constant", caret.offset);
        return make_binary(ExprKind::Pow, std::move(base), std::move(ex));
    }

    NodePtr parse_atom() {
        Token t = lex_.peek();
        switch (t.type) {
            case Token::Number: lex_.take(); return make_const(t.number);
            case Token::LParen: {
                lex_.take();
                NodePtr inner = parse_sum();
                if (lex_.peek().type != Token::RParen)
                    throw SyntaxError("unbalanced parenthesis", lex_.peek().offset);
                lex_.take();
                return inner;
            }
            case Token::Ident: {
                lex_.take();
                if (t.text == "x") return make_var();
                if (t.text == "pi") return make_const(std::numbers::pi, "pi");
                if (t.text == "e") return make_const(std::numbers::e, "e");
                ExprKind fk = function_kind(t.text);
                if (fk == ExprKind::Constant)
                    throw SyntaxError("unknown identifier '" + t.text + "'", t.offset);
                if (lex_.peek().type != Token::LParen)
                    throw SyntaxError("expected '(' after function '" + t.text + "'",
                                      lex_.peek().offset);
                lex_.take();
                NodePtr arg = parse_sum();
                if (lex_.peek().type != Token::RParen)
                    throw SyntaxError("unbalanced parenthesis", lex_.peek().offset);
                lex_.take();
                return make_unary(fk, std::move(arg));
            }
            default: throw SyntaxError("expected operand", t.offset);
        }
    }

    Lexer lex_;
};

Expr Expr::parse(std::string_view src) { return Parser(src).run(); }

Expr Expr::constant(double value) { return Expr(make_const(value)); }

Expr Expr::variable() { return Expr(make_var()); }

double Expr::eval(double x) const {
    double v = eval_node(*root_, x);
    if (!std::isfinite(v)) throw DomainError("non-finite result in '" + short_str(*root_) + "'");
    return v;
}

Expr Expr::derivative(int order) const {
    if (order < 1) throw std::invalid_argument("derivative order must be >= 1");
    NodePtr d = root_;
    for (int i = 0; i < order; ++i) d = diff(d);
    return Expr(std::move(d));
}

Expr Expr::substitute_x(const Expr& replacement) const {
    return Expr(substitute(root_, replacement.root_));
}

std::string Expr::str() const {
    std::string out;
    print_node(*root_, out, 0, false);
    return out;
}

ExprKind Expr::kind() const { return root_->kind; }

int Expr::child_count() const {
    if (root_->right) return 2;
    return root_->left ? 1 : 0;
}

Expr Expr::child(int i) const {
    if (i == 0 && root_->left) return Expr(root_->left);
    if (i == 1 && root_->right) return Expr(root_->right);
    throw std::out_of_range("Expr::child");
}

double Expr::constant_value() const {
    if (root_->kind != ExprKind::Constant) throw std::logic_error("not a constant node");
    return root_->value;
}

}  // namespace dws
