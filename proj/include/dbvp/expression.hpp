#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "dbvp/errors.hpp"

namespace dbvp {

/// Immutable arithmetic expression over the variables t and y and the grid
/// constant T. Operators + - * / ^ (with ^ binding tighter than unary minus
/// and associating right), the functions exp, sin, cos, log, sqrt, abs,
/// parentheses, decimal literals with optional exponent.
class Expression {
public:
    Expression() = default;

    /// Parses source text; throws ParseError with a position on bad input.
    static Expression parse(std::string_view source);

    /// Recursive evaluation at the binding (t, y, T). Domain faults (log of a
    /// nonpositive value, division by zero, non-finite results) throw
    /// EvalError naming the offending subexpression.
    double evaluate(double t, double y, double grid_T) const;

    /// Fully parenthesized canonical form; reparses to the same tree.
    std::string to_string() const;

    /// True when the expression references the state variable y.
    bool uses_state() const;

    bool empty() const { return root_ == nullptr; }

private:
    enum class Kind : std::uint8_t { Number, VarT, VarY, ConstT, Add, Sub, Mul, Div, Pow, Neg, Call };
    enum class Func : std::uint8_t { Exp, Sin, Cos, Log, Sqrt, Abs };

    struct Node {
        Kind kind;
        double number = 0.0;
        Func func = Func::Exp;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };
    using NodePtr = std::shared_ptr<const Node>;

    explicit Expression(NodePtr root) : root_(std::move(root)) {}

    static NodePtr make(Kind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    class Parser;

    static double eval_node(const Node& n, double t, double y, double grid_T);
    static void print_node(const Node& n, std::string& out);
    static bool node_uses_state(const Node& n);
    [[noreturn]] static void fault(const Node& n, const std::string& what);

    NodePtr root_;
};

class Expression::Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr run() {
        NodePtr e = parse_sum();
        skip_ws();
        if (pos_ != src_.size()) {
            throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "' at position " +
                             std::to_string(pos_), pos_);
        }
        if (!e) throw ParseError("empty expression", 0);
        return e;
    }

private:
    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            skip_ws();
            if (consume('+')) lhs = make(Kind::Add, lhs, parse_product());
            else if (consume('-')) lhs = make(Kind::Sub, lhs, parse_product());
            else return lhs;
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            skip_ws();
            if (consume('*')) lhs = make(Kind::Mul, lhs, parse_unary());
            else if (consume('/')) lhs = make(Kind::Div, lhs, parse_unary());
            else return lhs;
        }
    }

    NodePtr parse_unary() {
        skip_ws();
        if (consume('-')) return make(Kind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        skip_ws();
        if (consume('^')) return make(Kind::Pow, base, parse_unary());   // right-associative
        return base;
    }

    NodePtr parse_primary() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of expression", pos_);
        const char c = src_[pos_];
        if (consume('(')) {
            NodePtr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
        throw ParseError("unexpected character '" + std::string(1, c) + "' at position " + std::to_string(pos_),
                         pos_);
    }

    NodePtr parse_number() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            } else {
                pos_ = mark;   // the 'e' was not an exponent
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != src_.data() + pos_) {
            throw ParseError("malformed number at position " + std::to_string(start), start);
        }
        auto n = std::make_shared<Node>();
        n->kind = Kind::Number;
        n->number = value;
        return n;
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        const std::string_view name = src_.substr(start, pos_ - start);
        if (name == "t") return make(Kind::VarT);
        if (name == "y") return make(Kind::VarY);
        if (name == "T") return make(Kind::ConstT);

        static constexpr std::array<std::pair<std::string_view, Func>, 6> kFuncs{{
            {"exp", Func::Exp}, {"sin", Func::Sin}, {"cos", Func::Cos},
            {"log", Func::Log}, {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
        }};
        for (const auto& [fname, f] : kFuncs) {
            if (name == fname) {
                skip_ws();
                expect('(');
                NodePtr arg = parse_sum();
                expect(')');
                auto n = std::make_shared<Node>();
                n->kind = Kind::Call;
                n->func = f;
                n->lhs = std::move(arg);
                return n;
            }
        }
        throw ParseError("unknown identifier '" + std::string(name) + "' at position " + std::to_string(start),
                         start);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        skip_ws();
        if (!consume(c)) {
            throw ParseError("expected '" + std::string(1, c) + "' at position " + std::to_string(pos_), pos_);
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

inline Expression Expression::parse(std::string_view source) {
    return Expression(Parser(source).run());
}

inline void Expression::fault(const Node& n, const std::string& what) {
    std::string sub;
    print_node(n, sub);
    throw EvalError(what + " in '" + sub + "'", sub);
}

inline double Expression::eval_node(const Node& n, double t, double y, double grid_T) {
    double v = 0.0;
    switch (n.kind) {
        case Kind::Number: v = n.number; break;
        case Kind::VarT: v = t; break;
        case Kind::VarY: v = y; break;
        case Kind::ConstT: v = grid_T; break;
        case Kind::Add: v = eval_node(*n.lhs, t, y, grid_T) + eval_node(*n.rhs, t, y, grid_T); break;
        case Kind::Sub: v = eval_node(*n.lhs, t, y, grid_T) - eval_node(*n.rhs, t, y, grid_T); break;
        case Kind::Mul: v = eval_node(*n.lhs, t, y, grid_T) * eval_node(*n.rhs, t, y, grid_T); break;
        case Kind::Div: {
            const double num = eval_node(*n.lhs, t, y, grid_T);
            const double den = eval_node(*n.rhs, t, y, grid_T);
            if (den == 0.0) fault(n, "division by zero");
            v = num / den;
            break;
        }
        case Kind::Pow: v = std::pow(eval_node(*n.lhs, t, y, grid_T), eval_node(*n.rhs, t, y, grid_T)); break;
        case Kind::Neg: v = -eval_node(*n.lhs, t, y, grid_T); break;
        case Kind::Call: {
            const double a = eval_node(*n.lhs, t, y, grid_T);
            switch (n.func) {
                case Func::Exp: v = std::exp(a); break;
                case Func::Sin: v = std::sin(a); break;
                case Func::Cos: v = std::cos(a); break;
                case Func::Log:
                    if (a <= 0.0) fault(n, "log of a nonpositive value");
                    v = std::log(a);
                    break;
                case Func::Sqrt:
                    if (a < 0.0) fault(n, "sqrt of a negative value");
                    v = std::sqrt(a);
                    break;
                case Func::Abs: v = std::abs(a); break;
            }
            break;
        }
    }
    if (!std::isfinite(v)) fault(n, "non-finite result");
    return v;
}

inline double Expression::evaluate(double t, double y, double grid_T) const {
    if (!root_) throw EvalError("evaluating an empty expression", "");
    return eval_node(*root_, t, y, grid_T);
}

inline void Expression::print_node(const Node& n, std::string& out) {
    const auto print_number = [&out](double v) {
        char buf[32];
        const auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out.append(buf, res.ptr);
    };
    switch (n.kind) {
        case Kind::Number:
            if (n.number < 0) {   // canonical form keeps literals nonnegative
                out += "(-";
                print_number(-n.number);
                out += ')';
            } else {
                print_number(n.number);
            }
            break;
        case Kind::VarT: out += 't'; break;
        case Kind::VarY: out += 'y'; break;
        case Kind::ConstT: out += 'T'; break;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow: {
            out += '(';
            print_node(*n.lhs, out);
            switch (n.kind) {
                case Kind::Add: out += " + "; break;
                case Kind::Sub: out += " - "; break;
                case Kind::Mul: out += " * "; break;
                case Kind::Div: out += " / "; break;
                default: out += " ^ "; break;
            }
            print_node(*n.rhs, out);
            out += ')';
            break;
        }
        case Kind::Neg:
            out += "(-";
            print_node(*n.lhs, out);
            out += ')';
            break;
        case Kind::Call: {
            switch (n.func) {
                case Func::Exp: out += "exp"; break;
                case Func::Sin: out += "sin"; break;
                case Func::Cos: out += "cos"; break;
                case Func::Log: out += "log"; break;
                case Func::Sqrt: out += "sqrt"; break;
                case Func::Abs: out += "abs"; break;
            }
            out += '(';
            print_node(*n.lhs, out);
            out += ')';
            break;
        }
    }
}

inline std::string Expression::to_string() const {
    std::string out;
    if (root_) print_node(*root_, out);
    return out;
}

inline bool Expression::node_uses_state(const Node& n) {
    if (n.kind == Kind::VarY) return true;
    if (n.lhs && node_uses_state(*n.lhs)) return true;
    if (n.rhs && node_uses_state(*n.rhs)) return true;
    return false;
}

inline bool Expression::uses_state() const {
    return root_ && node_uses_state(*root_);
}

/// Convenience free function matching the parse operation name.
inline Expression parse_expression(std::string_view source) { return Expression::parse(source); }

} // namespace dbvp
