#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>

namespace horizon {

// Small arithmetic expression grammar: numbers, named variables,
// + - * / ^ and parentheses. Enough for warping functions like
// "(b-t)^-4" and family templates like "1/2 + 1/(n+1)" or "(-1)^n".
class Expr {
  public:
    using Env = std::map<std::string, double>;

    static Expr parse(const std::string& src) {
        Parser p{src, 0};
        Expr e;
        e.root_ = p.parse_sum();
        p.skip_ws();
        if (p.pos != src.size()) throw std::runtime_error("expr: trailing garbage in '" + src + "'");
        e.text_ = src;
        return e;
    }

    double eval(const Env& env) const { return root_->eval(env); }
    const std::string& text() const { return text_; }

  private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(const Env&) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Num : Node {
        double v;
        explicit Num(double x) : v(x) {}
        double eval(const Env&) const override { return v; }
    };
    struct Var : Node {
        std::string name;
        explicit Var(std::string n) : name(std::move(n)) {}
        double eval(const Env& e) const override {
            auto it = e.find(name);
            if (it == e.end()) throw std::runtime_error("expr: unbound variable " + name);
            return it->second;
        }
    };
    struct Bin : Node {
        char op;
        NodePtr a, b;
        Bin(char o, NodePtr x, NodePtr y) : op(o), a(std::move(x)), b(std::move(y)) {}
        double eval(const Env& e) const override {
            double u = a->eval(e), v = b->eval(e);
            switch (op) {
                case '+': return u + v;
                case '-': return u - v;
                case '*': return u * v;
                case '/': return u / v;
                case '^': {
                    // negative bases only with integral exponents
                    if (u < 0 && std::abs(v - std::round(v)) < 1e-9) {
                        double r = std::pow(-u, std::round(v));
                        return (std::llround(v) % 2 != 0) ? -r : r;
                    }
                    return std::pow(u, v);
                }
            }
            throw std::logic_error("expr: bad op");
        }
    };
    struct Neg : Node {
        NodePtr a;
        explicit Neg(NodePtr x) : a(std::move(x)) {}
        double eval(const Env& e) const override { return -a->eval(e); }
    };

    struct Parser {
        const std::string& s;
        size_t pos;

        void skip_ws() {
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        bool eat(char c) {
            skip_ws();
            if (pos < s.size() && s[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }
        NodePtr parse_sum() {
            NodePtr a = parse_term();
            for (;;) {
                if (eat('+'))
                    a = std::make_shared<Bin>('+', a, parse_term());
                else if (eat('-'))
                    a = std::make_shared<Bin>('-', a, parse_term());
                else
                    return a;
            }
        }
        NodePtr parse_term() {
            NodePtr a = parse_pow();
            for (;;) {
                if (eat('*'))
                    a = std::make_shared<Bin>('*', a, parse_pow());
                else if (eat('/'))
                    a = std::make_shared<Bin>('/', a, parse_pow());
                else
                    return a;
            }
        }
        NodePtr parse_pow() {
            NodePtr a = parse_atom();
            if (eat('^')) return std::make_shared<Bin>('^', a, parse_pow());
            return a;
        }
        NodePtr parse_atom() {
            skip_ws();
            if (pos >= s.size()) throw std::runtime_error("expr: unexpected end");
            char c = s[pos];
            if (c == '(') {
                ++pos;
                NodePtr a = parse_sum();
                if (!eat(')')) throw std::runtime_error("expr: missing ')'");
                return a;
            }
            if (c == '-') {
                ++pos;
                return std::make_shared<Neg>(parse_atom());
            }
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                size_t end = pos;
                while (end < s.size() &&
                       (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.' ||
                        s[end] == 'e' || s[end] == 'E' ||
                        ((s[end] == '+' || s[end] == '-') && (s[end - 1] == 'e' || s[end - 1] == 'E'))))
                    ++end;
                double v = std::stod(s.substr(pos, end - pos));
                pos = end;
                return std::make_shared<Num>(v);
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                size_t end = pos;
                while (end < s.size() &&
                       (std::isalnum(static_cast<unsigned char>(s[end])) || s[end] == '_'))
                    ++end;
                std::string name = s.substr(pos, end - pos);
                pos = end;
                if (name == "pi") return std::make_shared<Num>(M_PI);
                return std::make_shared<Var>(name);
            }
            throw std::runtime_error(std::string("expr: unexpected character '") + c + "'");
        }
    };

    NodePtr root_;
    std::string text_;
};

}  // namespace horizon
