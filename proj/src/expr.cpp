#include "meanlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <type_traits>

#include "meanlab/errors.hpp"
#include "meanlab/ratio_functions.hpp"

namespace meanlab {

namespace {

// ---------------------------------------------------------------- parsing

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    NodePtr parse_all()
    {
        skip_ws();
        if (at_end())
            throw ParseError("empty expression", pos_);
        NodePtr n = parse_expr();
        skip_ws();
        if (!at_end())
            throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
        return n;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    bool at_end() const { return pos_ >= s_.size(); }

    bool unicode_minus() const
    {
        return pos_ + 2 < s_.size() && static_cast<unsigned char>(s_[pos_]) == 0xE2 &&
               static_cast<unsigned char>(s_[pos_ + 1]) == 0x88 &&
               static_cast<unsigned char>(s_[pos_ + 2]) == 0x92;
    }

    char peek() const
    {
        if (at_end())
            return '\0';
        return unicode_minus() ? '-' : s_[pos_];
    }

    void advance() { pos_ += unicode_minus() ? 3 : 1; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (peek() == c) {
            advance();
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (at_end())
                throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    static NodePtr binary(BinaryOp op, NodePtr l, NodePtr r)
    {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Binary;
        n->bop = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    static NodePtr unary(UnaryOp op, NodePtr operand)
    {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Unary;
        n->uop = op;
        n->lhs = std::move(operand);
        return n;
    }

    NodePtr parse_expr()
    {
        NodePtr n = parse_term();
        for (;;) {
            if (accept('+'))
                n = binary(BinaryOp::Add, n, parse_term());
            else if (accept('-'))
                n = binary(BinaryOp::Sub, n, parse_term());
            else
                return n;
        }
    }

    NodePtr parse_term()
    {
        NodePtr n = parse_unary();
        for (;;) {
            if (accept('*'))
                n = binary(BinaryOp::Mul, n, parse_unary());
            else if (accept('/'))
                n = binary(BinaryOp::Div, n, parse_unary());
            else
                return n;
        }
    }

    NodePtr parse_unary()
    {
        if (accept('-'))
            return unary(UnaryOp::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power()
    {
        NodePtr base = parse_primary();
        if (accept('^'))
            return binary(BinaryOp::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_number()
    {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t n = digits();
        if (!at_end() && s_[pos_] == '.') {
            ++pos_;
            n += digits();
        }
        if (n == 0)
            throw ParseError("malformed number", start);
        if (!at_end() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            // Only an exponent if digits follow; otherwise leave 'e' for the caller to reject.
            std::size_t save = pos_;
            ++pos_;
            if (!at_end() && (s_[pos_] == '+' || s_[pos_] == '-'))
                ++pos_;
            if (digits() == 0)
                pos_ = save;
        }
        auto node = std::make_shared<ExprNode>();
        node->kind = NodeKind::Number;
        node->text = std::string(s_.substr(start, pos_ - start));
        node->number = std::strtod(node->text.c_str(), nullptr);
        node->number_q = num::parse_quad(node->text);
        return node;
    }

    std::string parse_identifier()
    {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    NodePtr parse_primary()
    {
        skip_ws();
        const std::size_t start = pos_;
        if (at_end())
            throw ParseError("expected an operand but input ended", pos_);
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (c == '(') {
            advance();
            NodePtr n = parse_expr();
            expect(')');
            return n;
        }
        if (!std::isalpha(static_cast<unsigned char>(c)))
            throw ParseError(std::string("unexpected '") + c + "'", start);

        const std::string id = parse_identifier();
        if (id == "exp" || id == "log" || id == "sqrt") {
            expect('(');
            NodePtr arg = parse_expr();
            expect(')');
            const UnaryOp op = id == "exp" ? UnaryOp::Exp : (id == "log" ? UnaryOp::Log : UnaryOp::Sqrt);
            return unary(op, arg);
        }
        if (auto sym = symbol_from_name(id)) {
            auto node = std::make_shared<ExprNode>();
            node->kind = NodeKind::Mean;
            node->symbol = *sym;
            const bool parametric = *sym == MeanSymbol::PowerMean || *sym == MeanSymbol::Heronian;
            if (parametric) {
                skip_ws();
                if (peek() != '[')
                    throw ParseError(id + " needs a bracketed exponent", pos_);
                advance();
                node->exponent = parse_expr();
                expect(']');
            }
            skip_ws();
            if (peek() == '(') {
                advance();
                node->lhs = parse_expr();
                expect(',');
                node->rhs = parse_expr();
                expect(')');
            }
            return node;
        }
        if (id == "e" || id == "pi" || find_named_constant(id)) {
            auto node = std::make_shared<ExprNode>();
            node->kind = NodeKind::Constant;
            node->text = id;
            return node;
        }
        throw ParseError("unknown identifier '" + id + "'", start);
    }
};

// ---------------------------------------------------------------- printing

int precedence(const ExprNode& n)
{
    switch (n.kind) {
    case NodeKind::Binary:
        switch (n.bop) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
        }
        break;
    case NodeKind::Unary:
        return n.uop == UnaryOp::Neg ? 3 : 5;
    default:
        break;
    }
    return 5;
}

void print(const ExprNode& n, std::string& out);

void print_wrapped(const ExprNode& n, bool wrap, std::string& out)
{
    if (wrap)
        out += '(';
    print(n, out);
    if (wrap)
        out += ')';
}

void print(const ExprNode& n, std::string& out)
{
    switch (n.kind) {
    case NodeKind::Number:
    case NodeKind::Constant:
        out += n.text;
        return;
    case NodeKind::Mean:
        out += symbol_name(n.symbol);
        if (n.exponent) {
            out += '[';
            print(*n.exponent, out);
            out += ']';
        }
        if (n.lhs) {
            out += '(';
            print(*n.lhs, out);
            out += ", ";
            print(*n.rhs, out);
            out += ')';
        }
        return;
    case NodeKind::Unary:
        switch (n.uop) {
        case UnaryOp::Neg:
            out += '-';
            print_wrapped(*n.lhs, precedence(*n.lhs) < 3, out);
            return;
        case UnaryOp::Exp: out += "exp("; break;
        case UnaryOp::Log: out += "log("; break;
        case UnaryOp::Sqrt: out += "sqrt("; break;
        }
        print(*n.lhs, out);
        out += ')';
        return;
    case NodeKind::Binary: {
        const int p = precedence(n);
        if (n.bop == BinaryOp::Pow) {
            print_wrapped(*n.lhs, precedence(*n.lhs) < 5, out);
            out += '^';
            print_wrapped(*n.rhs, precedence(*n.rhs) < 3, out);
            return;
        }
        static constexpr char ops[] = {'+', '-', '*', '/'};
        print_wrapped(*n.lhs, precedence(*n.lhs) < p, out);
        out += ops[static_cast<int>(n.bop)];
        print_wrapped(*n.rhs, precedence(*n.rhs) <= p, out);
        return;
    }
    }
}

void collect_constants(const NodePtr& n, std::set<std::string>& out)
{
    if (!n)
        return;
    if (n->kind == NodeKind::Constant && n->text != "e" && n->text != "pi")
        out.insert(n->text);
    collect_constants(n->exponent, out);
    collect_constants(n->lhs, out);
    collect_constants(n->rhs, out);
}

bool has_mean(const NodePtr& n)
{
    if (!n)
        return false;
    return n->kind == NodeKind::Mean || has_mean(n->exponent) || has_mean(n->lhs) ||
           has_mean(n->rhs);
}

// ---------------------------------------------------------------- evaluation

template <class Real> struct Scope {
    MeanCache<Real>* cache;
    const Environment& env;
};

[[noreturn]] void fail(const char* what, const ExprNode& n)
{
    std::string text;
    print(n, text);
    throw EvaluationError(what, text);
}

template <class Real> Real eval_node(const ExprNode& n, Scope<Real>& scope);

template <class Real> Real checked(Real v, const ExprNode& n)
{
    if (!num::isfinite(v))
        fail("non-finite value", n);
    return v;
}

template <class Real> Real eval_mean(const ExprNode& n, Scope<Real>& scope)
{
    if (!scope.cache && !n.lhs)
        fail("mean symbol in a constant expression", n);
    const Real exponent = n.exponent ? eval_node(*n.exponent, scope) : Real(0);
    if (n.lhs) {
        const Real u = eval_node(*n.lhs, scope);
        const Real v = eval_node(*n.rhs, scope);
        if (!(u > 0) || !(v > 0))
            fail("non-positive argument of a nested mean", n);
        const MeanOptions opts = scope.cache ? scope.cache->options() : MeanOptions{};
        return checked(evaluate(BasicPair<Real>(u, v), n.symbol, exponent, opts), n);
    }
    return checked(scope.cache->get(n.symbol, exponent), n);
}

template <class Real> Real eval_node(const ExprNode& n, Scope<Real>& scope)
{
    switch (n.kind) {
    case NodeKind::Number:
        if constexpr (std::is_same_v<Real, Quad>)
            return n.number_q;
        else
            return n.number;
    case NodeKind::Constant:
        if (n.text == "e")
            return num::euler_e<Real>();
        if (n.text == "pi")
            return num::pi<Real>();
        return static_cast<Real>(scope.env.value_quad(n.text));
    case NodeKind::Mean:
        return eval_mean(n, scope);
    case NodeKind::Unary: {
        const Real v = eval_node(*n.lhs, scope);
        switch (n.uop) {
        case UnaryOp::Neg: return -v;
        case UnaryOp::Exp: return checked(num::exp(v), n);
        case UnaryOp::Log:
            if (!(v > 0))
                fail("log of a non-positive value", n);
            return num::log(v);
        case UnaryOp::Sqrt:
            if (!(v >= 0))
                fail("sqrt of a negative value", n);
            return num::sqrt(v);
        }
        break;
    }
    case NodeKind::Binary: {
        const Real l = eval_node(*n.lhs, scope);
        const Real r = eval_node(*n.rhs, scope);
        switch (n.bop) {
        case BinaryOp::Add: return checked(l + r, n);
        case BinaryOp::Sub: return checked(l - r, n);
        case BinaryOp::Mul: return checked(l * r, n);
        case BinaryOp::Div:
            if (r == 0)
                fail("division by zero", n);
            return checked(l / r, n);
        case BinaryOp::Pow: {
            if (l < 0 && r != static_cast<Real>(static_cast<long long>(r)))
                fail("non-integral power of a negative value", n);
            if (l == 0 && !(r > 0))
                fail("non-positive power of zero", n);
            return checked(num::pow(l, r), n);
        }
        }
        break;
    }
    }
    fail("malformed expression", n);
}

}  // namespace

// ---------------------------------------------------------------- public API

MeanExpr MeanExpr::parse(std::string_view text) { return MeanExpr(Parser(text).parse_all()); }

std::string to_string(const NodePtr& node)
{
    std::string out;
    if (node)
        print(*node, out);
    return out;
}

std::string MeanExpr::to_string() const { return meanlab::to_string(root_); }

std::set<std::string> MeanExpr::constants() const
{
    std::set<std::string> out;
    collect_constants(root_, out);
    return out;
}

bool MeanExpr::is_constant() const { return !has_mean(root_); }

Quad named_constant_quad(std::string_view name)
{
    static const std::map<std::string, Quad, std::less<>> table = [] {
        std::map<std::string, Quad, std::less<>> m;
        for (const auto& c : named_constants())
            m[c.name] = evaluate_constant<Quad>(MeanExpr::parse(c.closed_form));
        return m;
    }();
    auto it = table.find(name);
    if (it == table.end())
        throw RangeError("unknown named constant '" + std::string(name) + "'");
    return it->second;
}

void Environment::set(std::string name, Quad value)
{
    named_constant_quad(name);  // validates the name
    overrides_[std::move(name)] = value;
}

bool Environment::overridden(std::string_view name) const { return overrides_.count(name) > 0; }

Quad Environment::value_quad(std::string_view name) const
{
    if (auto it = overrides_.find(name); it != overrides_.end())
        return it->second;
    return named_constant_quad(name);
}

template <class Real> Real MeanCache<Real>::get(MeanSymbol symbol, Real exponent)
{
    const auto idx = static_cast<std::size_t>(symbol);
    if (idx < 8) {
        if (!fixed_[idx])
            fixed_[idx] = evaluate(pair_, symbol, Real(0), opts_);
        return *fixed_[idx];
    }
    for (const auto& [key, value] : param_)
        if (key.first == symbol && key.second == exponent)
            return value;
    const Real v = evaluate(pair_, symbol, exponent, opts_);
    param_.push_back({{symbol, exponent}, v});
    return v;
}

template <class Real> Real evaluate(const MeanExpr& expr, MeanCache<Real>& cache, const Environment& env)
{
    if (expr.empty())
        throw PreconditionError("empty expression");
    Scope<Real> scope{&cache, env};
    return eval_node(*expr.root(), scope);
}

template <class Real> Real evaluate_constant(const MeanExpr& expr, const Environment& env)
{
    if (expr.empty())
        throw PreconditionError("empty expression");
    Scope<Real> scope{nullptr, env};
    return eval_node(*expr.root(), scope);
}

template class MeanCache<double>;
template class MeanCache<Quad>;
template double evaluate<double>(const MeanExpr&, MeanCache<double>&, const Environment&);
template Quad evaluate<Quad>(const MeanExpr&, MeanCache<Quad>&, const Environment&);
template double evaluate_constant<double>(const MeanExpr&, const Environment&);
template Quad evaluate_constant<Quad>(const MeanExpr&, const Environment&);

}  // namespace meanlab
