#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace schreier {

/// Base of all errors raised for invalid domain input (bad words, graphs,
/// parameters). The CLI maps these to exit code 2.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input; `position` is the 0-based offset of the
/// offending character.
class ParseError : public DomainError {
public:
    ParseError(const std::string& what, std::size_t position)
        : DomainError(what + " at position " + std::to_string(position)),
          detail_(what),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }
    /// Message without the position suffix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    std::size_t position_;
};

/// A word was expected to lie in the subgroup but its path does not close
/// up at the basepoint.
class MembershipError : public DomainError {
public:
    MembershipError(const std::string& word, const std::string& endpoint)
        : DomainError("word '" + word + "' is not in the subgroup: its path ends at " +
                      endpoint),
          endpoint_(endpoint) {}

    const std::string& endpoint() const noexcept { return endpoint_; }

private:
    std::string endpoint_;
};

/// Exploration depth was too small to answer exactly.
class DepthError : public DomainError {
public:
    using DomainError::DomainError;
};

}  // namespace schreier
