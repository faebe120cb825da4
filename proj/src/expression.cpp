#include "schreier/expression.hpp"

#include "schreier/error.hpp"

#include <cctype>
#include <vector>

namespace schreier {

struct Expression::Node {
    char op = 0;  // '#' literal, 'n' variable, '~' negation, else binary
    std::int64_t value = 0;
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(char op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, std::int64_t value = 0) {
    auto node = std::make_shared<Expression::Node>();
    node->op = op;
    node->value = value;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    NodePtr run() {
        NodePtr e = sum();
        skip();
        if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "' in expression", i_);
        return e;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool eat(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    NodePtr sum() {
        NodePtr e = product();
        for (;;) {
            if (eat('+')) {
                e = make('+', e, product());
            } else if (eat('-')) {
                e = make('-', e, product());
            } else {
                return e;
            }
        }
    }
    NodePtr product() {
        NodePtr e = unary();
        while (eat('*')) e = make('*', e, unary());
        return e;
    }
    NodePtr unary() {
        if (eat('-')) return make('~', unary());
        return power();
    }
    NodePtr power() {
        NodePtr base = atom();
        if (eat('^')) return make('^', base, unary());
        return base;
    }
    NodePtr atom() {
        skip();
        if (i_ >= s_.size()) throw ParseError("expression ends early", i_);
        if (eat('(')) {
            NodePtr e = sum();
            if (!eat(')')) throw ParseError("missing ')'", i_);
            return e;
        }
        if (s_[i_] == 'n') {
            ++i_;
            return make('n');
        }
        if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            const std::size_t start = i_;
            std::int64_t v = 0;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, s_[i_] - '0', &v)) {
                    throw ParseError("integer literal too large", start);
                }
                ++i_;
            }
            return make('#', nullptr, nullptr, v);
        }
        throw ParseError("unexpected '" + std::string(1, s_[i_]) + "' in expression", i_);
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

[[noreturn]] void overflow() { throw DomainError("expression overflows 64-bit integers"); }

std::int64_t eval(const Expression::Node& e, std::int64_t n) {
    std::int64_t r = 0;
    switch (e.op) {
        case '#': return e.value;
        case 'n': return n;
        case '~':
            if (__builtin_sub_overflow(std::int64_t{0}, eval(*e.lhs, n), &r)) overflow();
            return r;
        default: break;
    }
    const std::int64_t a = eval(*e.lhs, n);
    const std::int64_t b = eval(*e.rhs, n);
    switch (e.op) {
        case '+':
            if (__builtin_add_overflow(a, b, &r)) overflow();
            return r;
        case '-':
            if (__builtin_sub_overflow(a, b, &r)) overflow();
            return r;
        case '*':
            if (__builtin_mul_overflow(a, b, &r)) overflow();
            return r;
        default: break;
    }
    if (b < 0) throw DomainError("negative exponent in expression");
    if (a == 0 || a == 1) return b == 0 ? 1 : a;
    if (a == -1) return b % 2 ? -1 : 1;
    r = 1;
    for (std::int64_t i = 0; i < b; ++i) {
        if (__builtin_mul_overflow(r, a, &r)) overflow();
    }
    return r;
}

}  // namespace

Expression Expression::parse(std::string_view text) {
    return Expression(std::string(text), Parser(text).run());
}

std::int64_t Expression::operator()(std::int64_t n) const { return eval(*root_, n); }

}  // namespace schreier
