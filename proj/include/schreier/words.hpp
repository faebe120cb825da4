#pragma once

#include "schreier/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schreier {

class BoundaryPoint;

/// A letter of the symmetric alphabet. Generator i is encoded as 2i and its
/// inverse as 2i+1, so the natural integer order is a < A < b < B < ...
/// and inversion flips the low bit.
using Letter = int;

constexpr Letter inverse(Letter l) noexcept { return l ^ 1; }
constexpr bool is_positive(Letter l) noexcept { return (l & 1) == 0; }
constexpr int generator_of(Letter l) noexcept { return l >> 1; }

char letter_symbol(Letter l);

/// The free group F_m: m positive letters 'a'.. and their uppercase inverses.
class Alphabet {
public:
    explicit Alphabet(int m);

    int rank() const noexcept { return m_; }
    int size() const noexcept { return 2 * m_; }
    /// Growth base 2m-1 of the Cayley tree.
    long branching() const noexcept { return 2L * m_ - 1; }

    bool contains(Letter l) const noexcept { return l >= 0 && l < size(); }
    Letter parse_letter(char c, std::size_t position = 0) const;

private:
    int m_;
};

/// Freely reduced word; the empty word is the identity.
class ReducedWord {
public:
    ReducedWord() = default;

    /// Throws DomainError when `letters` contains an adjacent inverse pair.
    static ReducedWord from_reduced(std::vector<Letter> letters);

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }
    Letter back() const { return letters_.back(); }
    std::span<const Letter> letters() const noexcept { return letters_; }

    ReducedWord inverse() const;
    ReducedWord prefix(std::size_t n) const;
    ReducedWord suffix_from(std::size_t n) const;
    /// Largest generator index used plus one (0 for the identity).
    int min_rank() const noexcept;

    friend bool operator==(const ReducedWord&, const ReducedWord&) = default;
    friend auto operator<=>(const ReducedWord& a, const ReducedWord& b) {
        return a.letters_ <=> b.letters_;
    }

private:
    explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}
    friend ReducedWord reduce(std::span<const Letter>);

    std::vector<Letter> letters_;
};

ReducedWord reduce(std::span<const Letter> raw);
ReducedWord operator*(const ReducedWord& lhs, const ReducedWord& rhs);

/// Letters as text; the identity prints as the empty string.
std::string to_string(const ReducedWord& w);
/// Identity prints as "1" (CLI convention).
std::string to_display(const ReducedWord& w);

struct ParsedWord {
    ReducedWord word;
    bool was_reduced = true;  ///< false when the input needed cancellation
};

/// Whitespace is ignored; "1" denotes the identity. Non-reduced input is
/// reduced unless `strict`, in which case it is rejected.
ParsedWord parse_word(std::string_view text, const Alphabet& alphabet, bool strict = false);
/// Comma separated list of words; empty entries are skipped.
std::vector<ReducedWord> parse_word_list(std::string_view text, const Alphabet& alphabet);

/// Length of the longest common prefix.
std::size_t gromov_product(const ReducedWord& w1, const ReducedWord& w2);
std::size_t gromov_product(const ReducedWord& w, const BoundaryPoint& omega);
/// nullopt when the two points coincide (infinite product).
std::optional<std::size_t> gromov_product(const BoundaryPoint& w1, const BoundaryPoint& w2);

/// b_omega(g) = |g| - 2 (g|omega).
long busemann(const ReducedWord& g, const BoundaryPoint& omega);

/// Uniform boundary measure of the cylinder of infinite words starting with g:
/// 1 / (2m (2m-1)^{|g|-1}); the identity gives the whole boundary, 1.
MeasureValue cylinder_measure(const ReducedWord& g, const Alphabet& alphabet);

/// Radon-Nikodym derivative d(g mu)/d mu at omega: (2m-1)^{-b_omega(g)}.
MeasureValue rn_derivative(const ReducedWord& g, const BoundaryPoint& omega,
                           const Alphabet& alphabet);

}  // namespace schreier
