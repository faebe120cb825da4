#pragma once

#include "schreier/words.hpp"

#include <string>
#include <string_view>

namespace schreier {

/// Eventually periodic infinite reduced word u v v v ...
///
/// Stored in canonical form: the preperiod is as short as possible and the
/// period is primitive. With a shortest preperiod the period is pinned down
/// (it is the block read right after the preperiod), so two representations
/// denote the same point iff their canonical forms are equal.
class BoundaryPoint {
public:
    /// Normalizes arbitrary u and nonempty v: v is cyclically reduced
    /// (conjugating part moved into u), u is reduced and cancelled against
    /// the periodic tail, then canonicalized. Throws DomainError if v reduces
    /// to the identity.
    BoundaryPoint(const ReducedWord& preperiod, const ReducedWord& period);

    const ReducedWord& preperiod() const noexcept { return u_; }
    const ReducedWord& period() const noexcept { return v_; }

    Letter letter_at(std::size_t i) const;
    /// The truncation [omega]_n.
    ReducedWord prefix(std::size_t n) const;
    bool in_cylinder(const ReducedWord& g) const;

    /// g . omega (concatenate and reduce).
    BoundaryPoint translate(const ReducedWord& g) const;

    friend bool operator==(const BoundaryPoint&, const BoundaryPoint&) = default;

private:
    ReducedWord u_;
    ReducedWord v_;
};

/// "u|v" grammar, e.g. "|a" for a^infinity and "b|ab" for b(ab)^infinity.
BoundaryPoint parse_boundary_point(std::string_view text, const Alphabet& alphabet);
std::string to_string(const BoundaryPoint& omega);

}  // namespace schreier
