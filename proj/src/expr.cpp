#include "cb/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "cb/error.hpp"

namespace cb {

Interval Expr::eval(const Interval& x, const Interval& y) const {
    switch (op) {
        case Op::x: return x;
        case Op::y: return y;
        case Op::constant: return value;
        case Op::add: return lhs->eval(x, y) + rhs->eval(x, y);
        case Op::sub: return lhs->eval(x, y) - rhs->eval(x, y);
        case Op::mul: return lhs->eval(x, y) * rhs->eval(x, y);
        case Op::neg: return -lhs->eval(x, y);
        case Op::pow: return cb::pow(lhs->eval(x, y), exponent);
    }
    return Interval::entire();
}

double Expr::eval(double x, double y) const {
    switch (op) {
        case Op::x: return x;
        case Op::y: return y;
        case Op::constant: return number;
        case Op::add: return lhs->eval(x, y) + rhs->eval(x, y);
        case Op::sub: return lhs->eval(x, y) - rhs->eval(x, y);
        case Op::mul: return lhs->eval(x, y) * rhs->eval(x, y);
        case Op::neg: return -lhs->eval(x, y);
        case Op::pow: return std::pow(lhs->eval(x, y), double(exponent));
    }
    return NAN;
}

std::string Expr::str() const {
    switch (op) {
        case Op::x: return "x";
        case Op::y: return "y";
        case Op::constant: return text;
        case Op::add: return "(" + lhs->str() + "+" + rhs->str() + ")";
        case Op::sub: return "(" + lhs->str() + "-" + rhs->str() + ")";
        case Op::mul: return "(" + lhs->str() + "*" + rhs->str() + ")";
        case Op::neg: return "(-" + lhs->str() + ")";
        case Op::pow: return "(" + lhs->str() + "^" + std::to_string(exponent) + ")";
    }
    return "?";
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr parse() {
        auto e = expr();
        skip();
        if (pos_ != s_.size()) {
            if (s_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
            throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
        }
        return e;
    }

private:
    static ExprPtr node(Expr::Op op, ExprPtr a, ExprPtr b = nullptr) {
        auto e = std::make_shared<Expr>();
        e->op = op;
        e->lhs = std::move(a);
        e->rhs = std::move(b);
        return e;
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        auto e = term();
        for (;;) {
            if (eat('+'))
                e = node(Expr::Op::add, e, term());
            else if (eat('-'))
                e = node(Expr::Op::sub, e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        auto e = factor();
        while (eat('*')) e = node(Expr::Op::mul, e, factor());
        return e;
    }

    ExprPtr factor() {
        auto e = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) throw ParseError("exponent must be a nonnegative integer", start);
            if (pos_ - start > 3) throw ParseError("exponent too large", start);
            auto p = node(Expr::Op::pow, e);
            std::const_pointer_cast<Expr>(p)->exponent = unsigned(std::stoul(s_.substr(start, pos_ - start)));
            return p;
        }
        return e;
    }

    ExprPtr atom() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == 'x' || c == 'y') {
            std::size_t start = pos_++;
            if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                throw ParseError("unknown identifier", start);
            auto e = std::make_shared<Expr>();
            e->op = c == 'x' ? Expr::Op::x : Expr::Op::y;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '(') {
            std::size_t open = pos_++;
            auto e = expr();
            if (!eat(')')) throw ParseError("unbalanced '(' opened", open);
            return e;
        }
        if (c == '-') {
            ++pos_;
            return node(Expr::Op::neg, atom());
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') throw ParseError("unknown identifier", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    ExprPtr number() {
        std::size_t start = pos_;
        bool digits = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, digits = true;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, digits = true;
        }
        if (!digits) throw ParseError("malformed number", start);
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            std::size_t epos = pos_++;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (dstart == pos_) throw ParseError("malformed exponent in number", epos);
        }
        auto e = std::make_shared<Expr>();
        e->op = Expr::Op::constant;
        e->text = s_.substr(start, pos_ - start);
        e->value = Interval::from_decimal(e->text);
        e->number = std::strtod(e->text.c_str(), nullptr);
        return e;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(const std::string& text) { return Parser(text).parse(); }

VectorField make_vector_field(const std::string& fx, const std::string& fy) {
    VectorField f;
    f.fx = parse_expr(fx);
    f.fy = parse_expr(fy);
    f.source = f.fx->str() + ";" + f.fy->str();
    return f;
}

VectorField parse_vector_field(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ';') {
                std::string piece = line.substr(start, i - start);
                if (piece.find_first_not_of(" \t\r") != std::string::npos) parts.push_back(piece);
                start = i + 1;
            }
        }
    }
    if (parts.size() != 2)
        throw ParseError("vector field needs exactly two components, found " + std::to_string(parts.size()), 0);
    return make_vector_field(parts[0], parts[1]);
}

}  // namespace cb
