#pragma once

// Expressions over the means of a pair (a, b).
//
// Grammar (whitespace free between tokens, U+2212 accepted as '-'):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?              right-associative
//   primary := number | '(' expr ')'
//            | func '(' expr ')'                  func in exp, log, sqrt
//            | mean ['[' expr ']'] ['(' expr ',' expr ')']
//            | constant                           e, pi, or a named constant
//
// A mean is one of A G H L I P X Y, or Mp / Hp, which require the bracketed
// exponent. With an argument list the mean is applied to the two evaluated
// sub-expressions instead of the pair.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "meanlab/means.hpp"
#include "meanlab/real.hpp"

namespace meanlab {

enum class NodeKind { Mean, Number, Constant, Unary, Binary };
enum class UnaryOp { Neg, Exp, Log, Sqrt };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using NodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    NodeKind kind = NodeKind::Number;
    MeanSymbol symbol = MeanSymbol::A;  // Mean
    std::string text;                   // Number literal or Constant name
    double number = 0;
    Quad number_q = 0;
    UnaryOp uop = UnaryOp::Neg;
    BinaryOp bop = BinaryOp::Add;
    NodePtr exponent;                   // Mean: Mp/Hp exponent
    NodePtr lhs;                        // Unary operand, Binary left, Mean first argument
    NodePtr rhs;                        // Binary right, Mean second argument
};

/// Constant bindings. Overrides replace registry values (used by sharpness probing).
class Environment {
public:
    Environment() = default;

    void set(std::string name, Quad value);
    bool overridden(std::string_view name) const;

    /// Registry value or override. RangeError for unknown names.
    Quad value_quad(std::string_view name) const;
    double value(std::string_view name) const { return static_cast<double>(value_quad(name)); }

    const std::map<std::string, Quad, std::less<>>& overrides() const noexcept { return overrides_; }

private:
    std::map<std::string, Quad, std::less<>> overrides_;
};

/// Registry constant evaluated from its closed form in binary128.
Quad named_constant_quad(std::string_view name);

class MeanExpr {
public:
    MeanExpr() = default;
    explicit MeanExpr(NodePtr root) : root_(std::move(root)) {}

    /// ParseError (with byte offset) on syntax errors and unknown identifiers.
    static MeanExpr parse(std::string_view text);

    const NodePtr& root() const noexcept { return root_; }
    bool empty() const noexcept { return !root_; }

    /// Canonical text; parse(to_string()) reproduces the tree.
    std::string to_string() const;

    /// Named constants referenced anywhere in the tree (e and pi excluded).
    std::set<std::string> constants() const;
    bool references(std::string_view constant) const { return constants().count(std::string(constant)) > 0; }
    /// True if no mean symbol occurs.
    bool is_constant() const;

private:
    NodePtr root_;
};

std::string to_string(const NodePtr& node);

/// Memoized mean values for one pair.
template <class Real> class MeanCache {
public:
    explicit MeanCache(const BasicPair<Real>& pair, MeanOptions opts = {}) : pair_(pair), opts_(opts) {}

    const BasicPair<Real>& pair() const noexcept { return pair_; }
    const MeanOptions& options() const noexcept { return opts_; }
    Real get(MeanSymbol symbol, Real exponent);

private:
    BasicPair<Real> pair_;
    MeanOptions opts_;
    std::optional<Real> fixed_[8];
    std::vector<std::pair<std::pair<MeanSymbol, Real>, Real>> param_;
};

/// EvaluationError on log/sqrt/pow of an invalid value, division by zero,
/// non-positive nested-mean arguments, or a non-finite result.
template <class Real>
Real evaluate(const MeanExpr& expr, MeanCache<Real>& cache, const Environment& env = {});

template <class Real>
Real evaluate(const MeanExpr& expr, const BasicPair<Real>& pair, const Environment& env = {},
              const MeanOptions& opts = {})
{
    MeanCache<Real> cache(pair, opts);
    return evaluate(expr, cache, env);
}

/// Value of a mean-free expression; EvaluationError if a mean occurs.
template <class Real> Real evaluate_constant(const MeanExpr& expr, const Environment& env = {});

extern template class MeanCache<double>;
extern template class MeanCache<Quad>;
extern template double evaluate<double>(const MeanExpr&, MeanCache<double>&, const Environment&);
extern template Quad evaluate<Quad>(const MeanExpr&, MeanCache<Quad>&, const Environment&);
extern template double evaluate_constant<double>(const MeanExpr&, const Environment&);
extern template Quad evaluate_constant<Quad>(const MeanExpr&, const Environment&);

}  // namespace meanlab
