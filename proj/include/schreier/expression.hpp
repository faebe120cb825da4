#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace schreier {

/// Integer expression in one variable n: integers, n, + - * ^, unary minus
/// and parentheses; ^ binds tightest and is right associative. Evaluation
/// is exact in 64 bits and throws DomainError on overflow.
class Expression {
public:
    /// ParseError with the offending position on malformed input.
    static Expression parse(std::string_view text);

    std::int64_t operator()(std::int64_t n) const;
    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root) : text_(std::move(text)), root_(std::move(root)) {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

}  // namespace schreier
