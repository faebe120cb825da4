#pragma once

#include "schreier/boundary_point.hpp"
#include "schreier/nielsen_schreier.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace schreier {

enum class Tri { yes, no, unknown };
std::string to_string(Tri t);

enum class BoundaryClass { delta, omega, theta, inconclusive };
std::string to_string(BoundaryClass c);

/// Where the path of a boundary point goes relative to the spanning tree.
///
/// delta carries the basis word h of non-tree edges crossed (the point lies
/// in the translate h.Delta); theta is delta with h = e whose path ends up
/// in a hanging branch.
struct BoundaryVerdict {
    BoundaryClass cls = BoundaryClass::inconclusive;
    std::vector<GenLetter> history;
    int depth = 0;  ///< letters traced
    Tri in_lambda = Tri::unknown;
    Tri in_lambda_rad = Tri::unknown;
    Tri in_omega = Tri::unknown;

    bool state_cycle = false;
    std::size_t cycle_start = 0;   ///< path position where the periodic state loop starts
    std::size_t cycle_length = 0;
    std::optional<std::size_t> branch_entry;  ///< position of the stem edge
    std::vector<std::size_t> nontree_positions;
};

/// Prefix of sigma^infinity(xi): the expansion of xi without the trailing
/// sigma_plus of its last letter.
ReducedWord sigma_infinity_prefix(const NSBasis& basis, std::span<const GenLetter> xi);

/// Traces the path of omega for at most `depth` letters. The state (vertex,
/// phase in the period) repeating makes the verdict exact; entering a
/// hanging branch does as well. The basis ball must cover radius `depth`
/// or the trace stops early as inconclusive.
BoundaryVerdict classify_boundary_point(const NSBasis& basis, const BoundaryPoint& omega, int depth);

enum class BucketKind { delta, omega_compatible };
std::string to_string(BucketKind k);

struct PartitionBucket {
    std::vector<GenLetter> history;
    BucketKind kind = BucketKind::omega_compatible;
    BigInt count;          ///< number of length-n words
    MeasureValue measure;  ///< count / (2m (2m-1)^{n-1})
};

struct Partition {
    int n = 0;
    std::vector<PartitionBucket> buckets;  ///< sorted by (history, kind)
    BigInt total_count;
    MeasureValue total_measure;
};

/// Classifies every reduced word of length n by its traced path: once the
/// path enters a hanging branch the whole cylinder lies in h.Delta (kind
/// delta); otherwise the cylinder is still open (omega_compatible).
Partition partition_at_depth(const NSBasis& basis, int n);

/// Sum over h in H with |h| <= radius of (2m-1)^{-b_omega(h)}.
MeasureValue sigma_partial_sum(const NSBasis& basis, const BoundaryPoint& omega, int radius);

/// Subgroup elements of length <= radius, as reduced words (includes e).
std::vector<ReducedWord> subgroup_ball(const NSBasis& basis, int radius);

struct SignViolation {
    std::string kind;  ///< "omega_prefix" or "delta_element"
    std::string omega;
    std::string h;
    long busemann = 0;
};

struct SignCheckReport {
    std::size_t omega_checks = 0;
    std::size_t delta_points = 0;
    std::size_t delta_checks = 0;
    std::vector<SignViolation> violations;
};

/// Samples xi = p q^infinity, sets omega = sigma^infinity(xi) and checks
/// b_omega(h) <= 0 on the prefixes h = sigma([xi]_n), n <= max_prefix; then
/// samples eventually periodic points whose path stays in the tree and
/// checks b_omega(h) >= 0 for all h in H of length <= radius.
SignCheckReport busemann_sign_check(const NSBasis& basis, std::size_t omega_samples, int max_prefix,
                                    std::size_t delta_samples, int radius, std::uint64_t seed);

}  // namespace schreier
