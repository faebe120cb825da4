#include "schreier/words.hpp"

#include "schreier/boundary_point.hpp"
#include "schreier/error.hpp"

#include <algorithm>
#include <cctype>

namespace schreier {

char letter_symbol(Letter l) {
    const char base = is_positive(l) ? 'a' : 'A';
    return static_cast<char>(base + generator_of(l));
}

Alphabet::Alphabet(int m) : m_(m) {
    if (m < 1 || m > 26) throw DomainError("alphabet rank must lie in [1, 26], got " + std::to_string(m));
}

Letter Alphabet::parse_letter(char c, std::size_t position) const {
    Letter l = -1;
    if (c >= 'a' && c <= 'z') l = 2 * (c - 'a');
    if (c >= 'A' && c <= 'Z') l = 2 * (c - 'A') + 1;
    if (!contains(l)) {
        throw ParseError(std::string("unknown letter '") + c + "' for rank " + std::to_string(m_),
                         position);
    }
    return l;
}

ReducedWord ReducedWord::from_reduced(std::vector<Letter> letters) {
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
        if (letters[i + 1] == schreier::inverse(letters[i])) {
            throw DomainError("word is not freely reduced at position " + std::to_string(i));
        }
    }
    return ReducedWord(std::move(letters));
}

ReducedWord ReducedWord::inverse() const {
    std::vector<Letter> out(letters_.rbegin(), letters_.rend());
    for (Letter& l : out) l = schreier::inverse(l);
    return ReducedWord(std::move(out));
}

ReducedWord ReducedWord::prefix(std::size_t n) const {
    n = std::min(n, letters_.size());
    return ReducedWord(std::vector<Letter>(letters_.begin(), letters_.begin() + n));
}

ReducedWord ReducedWord::suffix_from(std::size_t n) const {
    n = std::min(n, letters_.size());
    return ReducedWord(std::vector<Letter>(letters_.begin() + n, letters_.end()));
}

int ReducedWord::min_rank() const noexcept {
    int r = 0;
    for (Letter l : letters_) r = std::max(r, generator_of(l) + 1);
    return r;
}

ReducedWord reduce(std::span<const Letter> raw) {
    std::vector<Letter> stack;
    stack.reserve(raw.size());
    for (Letter l : raw) {
        if (!stack.empty() && stack.back() == inverse(l)) {
            stack.pop_back();
        } else {
            stack.push_back(l);
        }
    }
    return ReducedWord(std::move(stack));
}

ReducedWord operator*(const ReducedWord& lhs, const ReducedWord& rhs) {
    std::vector<Letter> raw(lhs.letters().begin(), lhs.letters().end());
    raw.insert(raw.end(), rhs.letters().begin(), rhs.letters().end());
    return reduce(raw);
}

std::string to_string(const ReducedWord& w) {
    std::string s;
    s.reserve(w.size());
    for (Letter l : w.letters()) s.push_back(letter_symbol(l));
    return s;
}

std::string to_display(const ReducedWord& w) { return w.empty() ? "1" : to_string(w); }

ParsedWord parse_word(std::string_view text, const Alphabet& alphabet, bool strict) {
    std::vector<Letter> raw;
    bool identity_marker = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '1') {
            identity_marker = true;
            continue;
        }
        raw.push_back(alphabet.parse_letter(c, i));
    }
    if (identity_marker && !raw.empty()) {
        throw ParseError("'1' denotes the identity and cannot be mixed with letters",
                         text.find('1'));
    }
    ParsedWord out;
    out.word = reduce(raw);
    out.was_reduced = out.word.size() == raw.size();
    if (strict && !out.was_reduced) {
        for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
            if (raw[i + 1] == inverse(raw[i])) throw ParseError("word is not freely reduced", i);
        }
    }
    return out;
}

std::vector<ReducedWord> parse_word_list(std::string_view text, const Alphabet& alphabet) {
    std::vector<ReducedWord> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(',', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view item = text.substr(start, end - start);
        const bool blank = std::all_of(item.begin(), item.end(),
                                       [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
        if (!blank) {
            try {
                out.push_back(parse_word(item, alphabet).word);
            } catch (const ParseError& e) {
                throw ParseError("in word list: " + e.detail(), start + e.position());
            }
        }
        start = end + 1;
    }
    return out;
}

std::size_t gromov_product(const ReducedWord& w1, const ReducedWord& w2) {
    const std::size_t n = std::min(w1.size(), w2.size());
    std::size_t i = 0;
    while (i < n && w1[i] == w2[i]) ++i;
    return i;
}

std::size_t gromov_product(const ReducedWord& w, const BoundaryPoint& omega) {
    std::size_t i = 0;
    while (i < w.size() && w[i] == omega.letter_at(i)) ++i;
    return i;
}

std::optional<std::size_t> gromov_product(const BoundaryPoint& w1, const BoundaryPoint& w2) {
    if (w1 == w2) return std::nullopt;
    // Distinct eventually periodic words differ before both preperiods plus
    // the two periods have been read (Fine-Wilf).
    const std::size_t bound = std::max(w1.preperiod().size(), w2.preperiod().size()) +
                              w1.period().size() + w2.period().size();
    for (std::size_t i = 0; i <= bound; ++i) {
        if (w1.letter_at(i) != w2.letter_at(i)) return i;
    }
    return std::nullopt;
}

long busemann(const ReducedWord& g, const BoundaryPoint& omega) {
    return static_cast<long>(g.size()) - 2 * static_cast<long>(gromov_product(g, omega));
}

MeasureValue cylinder_measure(const ReducedWord& g, const Alphabet& alphabet) {
    if (g.empty()) return MeasureValue(1);
    MeasureValue r(BigInt(1), BigInt(alphabet.size()) *
                                  ipower(alphabet.branching(), static_cast<unsigned long>(g.size() - 1)));
    r.canonicalize();
    return r;
}

MeasureValue rn_derivative(const ReducedWord& g, const BoundaryPoint& omega, const Alphabet& alphabet) {
    return power(alphabet.branching(), -busemann(g, omega));
}

}  // namespace schreier
