#include "schreier/boundary_point.hpp"

#include "schreier/error.hpp"

#include <algorithm>
#include <vector>

namespace schreier {

namespace {

std::vector<Letter> rotate_left(std::vector<Letter> v) {
    std::rotate(v.begin(), v.begin() + 1, v.end());
    return v;
}

std::vector<Letter> primitive_root(const std::vector<Letter>& v) {
    const std::size_t n = v.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t i = p; i < n && ok; ++i) ok = v[i] == v[i - p];
        if (ok) return std::vector<Letter>(v.begin(), v.begin() + p);
    }
    return v;
}

}  // namespace

BoundaryPoint::BoundaryPoint(const ReducedWord& preperiod, const ReducedWord& period) {
    const ReducedWord reduced_period = reduce(period.letters());
    std::vector<Letter> v(reduced_period.letters().begin(), reduced_period.letters().end());
    if (v.empty()) throw DomainError("boundary point period must not reduce to the identity");

    // v = c w c^-1 with w cyclically reduced; then v^inf = c w^inf.
    std::vector<Letter> conj;
    while (v.size() >= 2 && v.back() == inverse(v.front())) {
        conj.push_back(v.front());
        v = std::vector<Letter>(v.begin() + 1, v.end() - 1);
    }
    std::vector<Letter> u(preperiod.letters().begin(), preperiod.letters().end());
    u.insert(u.end(), conj.begin(), conj.end());
    const ReducedWord reduced_pre = reduce(u);
    u.assign(reduced_pre.letters().begin(), reduced_pre.letters().end());

    // Cancel the end of u against the periodic tail.
    while (!u.empty() && u.back() == inverse(v.front())) {
        u.pop_back();
        v = rotate_left(std::move(v));
    }
    // Shortest preperiod: absorb trailing letters of u that match the period.
    while (!u.empty() && u.back() == v.back()) {
        u.pop_back();
        std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
    }
    u_ = ReducedWord::from_reduced(std::move(u));
    v_ = ReducedWord::from_reduced(primitive_root(v));
}

Letter BoundaryPoint::letter_at(std::size_t i) const {
    if (i < u_.size()) return u_[i];
    return v_[(i - u_.size()) % v_.size()];
}

ReducedWord BoundaryPoint::prefix(std::size_t n) const {
    std::vector<Letter> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = letter_at(i);
    return ReducedWord::from_reduced(std::move(out));
}

bool BoundaryPoint::in_cylinder(const ReducedWord& g) const {
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (letter_at(i) != g[i]) return false;
    }
    return true;
}

BoundaryPoint BoundaryPoint::translate(const ReducedWord& g) const {
    std::vector<Letter> raw(g.letters().begin(), g.letters().end());
    raw.insert(raw.end(), u_.letters().begin(), u_.letters().end());
    return BoundaryPoint(reduce(raw), v_);
}

BoundaryPoint parse_boundary_point(std::string_view text, const Alphabet& alphabet) {
    const std::size_t bar = text.find('|');
    if (bar == std::string_view::npos) {
        throw ParseError("boundary point must have the form 'u|v'", text.size());
    }
    if (text.find('|', bar + 1) != std::string_view::npos) {
        throw ParseError("boundary point has more than one '|'", text.find('|', bar + 1));
    }
    const ReducedWord u = parse_word(text.substr(0, bar), alphabet).word;
    ReducedWord v;
    try {
        v = parse_word(text.substr(bar + 1), alphabet).word;
    } catch (const ParseError& e) {
        throw ParseError(std::string("in period: ") + e.what(), bar + 1 + e.position());
    }
    if (v.empty()) throw ParseError("boundary point period is empty", bar + 1);
    return BoundaryPoint(u, v);
}

std::string to_string(const BoundaryPoint& omega) {
    return to_string(omega.preperiod()) + "|" + to_string(omega.period());
}

}  // namespace schreier
