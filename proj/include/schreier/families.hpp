#pragma once

#include "schreier/asymptotics.hpp"
#include "schreier/expression.hpp"
#include "schreier/graph.hpp"
#include "schreier/graph_lazy.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace schreier {

using FamilyParams = std::map<std::string, std::string>;

/// "key=value" pairs separated by ',' or ';'.
FamilyParams parse_family_params(std::string_view text);

struct FamilyClaim {
    std::string statement;
    std::string tag;  ///< "claimed" (stated for the construction) or "derived" (checked here)
};

struct FamilyInfo {
    std::string name;
    std::string summary;
    std::string parameters;  ///< accepted keys with defaults
    std::string labeling;    ///< how the unlabeled construction is labeled
};

std::vector<FamilyInfo> family_list();

/// An instantiated family: the graph plus what is known about it without
/// computation.
struct Family {
    std::string name;
    int m = 2;
    FamilyParams params;  ///< effective parameters, defaults filled in
    GraphPtr graph;
    std::optional<FiniteGraph> finite;  ///< set for finite graphs
    SubgroupFacts facts;
    std::optional<bool> srw_transient;  ///< family metadata
    std::string srw_source;
    std::string expected_classification;
    std::vector<FamilyClaim> claims;
    /// Radial families give their sphere data in closed form.
    std::function<SphereProfile(int)> sphere_profile;
};

/// Throws DomainError for unknown families or invalid parameters.
Family instantiate(const std::string& name, const FamilyParams& params = {});

// Construction details exposed for checks.

/// Two rays from o, rho1 = A^n (vertices p<n>) and rho2 = a^n (vertices
/// q<n>), with rungs q<n> -b-> p<n+1>; branches fill the rest. With this
/// labeling the lexicographic geodesic tree uses every rung and drops the
/// edges p<n> - p<n+1>, n >= 1.
class LadderGraph final : public BranchFilledGraph {
public:
    explicit LadderGraph(int m) : m_(m) {}
    int rank() const override { return m_; }
    std::string basepoint() const override { return "o"; }
    bool is_finite() const override { return false; }

protected:
    std::optional<std::string> base_target(std::string_view v, Letter l) const override;
    CoreStatus base_status(std::string_view v) const override;
    std::optional<long> base_distance(std::string_view v) const override;

private:
    int m_;
};

/// Ray o -a-> r1 -a-> r2 ...; at r<n> a b-labeled cycle of length 2d_n+1
/// through c<n>_1 .. c<n>_<2d_n>.
class LoopedRayGraph final : public BranchFilledGraph {
public:
    LoopedRayGraph(int m, Expression d) : m_(m), d_(std::move(d)) {}
    int rank() const override { return m_; }
    std::string basepoint() const override { return "o"; }
    bool is_finite() const override { return false; }
    std::int64_t d(std::int64_t n) const;

protected:
    std::optional<std::string> base_target(std::string_view v, Letter l) const override;
    CoreStatus base_status(std::string_view v) const override;
    std::optional<long> base_distance(std::string_view v) const override;

private:
    int m_;
    Expression d_;
};

/// Ray o -a-> r1 ... with one loop per further generator at every r<n>;
/// the other 2m-1 slots at o carry hanging branches.
class AmendissGraph final : public BranchFilledGraph {
public:
    explicit AmendissGraph(int m) : m_(m) {}
    int rank() const override { return m_; }
    std::string basepoint() const override { return "o"; }
    bool is_finite() const override { return false; }

protected:
    std::optional<std::string> base_target(std::string_view v, Letter l) const override;
    CoreStatus base_status(std::string_view v) const override;
    std::optional<long> base_distance(std::string_view v) const override;

private:
    int m_;
};

/// Cayley tree of F with each edge between tree radii d_k and d_k+1
/// subdivided by a vertex "s:<lower word>" carrying loops for the other
/// m-1 generators. Tree vertices are named by their word, the root "o".
class MaxGrowthConsGraph final : public LabeledGraph {
public:
    MaxGrowthConsGraph(int m, Expression d);
    int rank() const override { return m_; }
    std::string basepoint() const override { return "o"; }
    std::optional<std::string> target(std::string_view v, Letter l) const override;
    bool is_finite() const override { return false; }
    bool is_complete() const override { return true; }
    CoreStatus core_status(std::string_view) const override { return CoreStatus::in_core; }
    std::optional<bool> enters_branch(std::string_view, Letter) const override { return false; }
    std::optional<long> distance_from_basepoint(std::string_view v) const override;

    /// Number of k with d_k < r.
    long subdivisions_below(long r) const;
    bool subdivided(long r) const;  ///< r is some d_k
    SphereProfile profile(int depth) const;

private:
    int m_;
    Expression d_;
};

/// Cayley tree of F with, at each depth d_k, one downward branch removed at
/// two points x_k, y_k and the edge x_k -l_k-> y_k added. The points are
/// scheduled so that every shadow of the spanning tree is eventually hit.
class MinGrowthDissGraph final : public LabeledGraph {
public:
    struct Step {
        std::vector<Letter> x, y;
        Letter label = 0;
        long depth = 0;
    };

    MinGrowthDissGraph(int m, Expression d);
    int rank() const override { return m_; }
    std::string basepoint() const override { return "o"; }
    std::optional<std::string> target(std::string_view v, Letter l) const override;
    bool is_finite() const override { return false; }
    bool is_complete() const override { return true; }
    CoreStatus core_status(std::string_view) const override { return CoreStatus::in_core; }
    std::optional<bool> enters_branch(std::string_view, Letter) const override { return false; }
    std::optional<long> distance_from_basepoint(std::string_view v) const override;

    /// Schedule steps 1..k (memoized, thread safe).
    std::vector<Step> schedule(std::size_t k) const;
    /// Smallest k such that every vertex of depth <= radius has a scheduled
    /// point in its shadow after k steps, searching up to max_steps.
    std::optional<std::size_t> shadows_hit(int radius, std::size_t max_steps) const;

private:
    void extend_locked(std::size_t k) const;
    bool surviving_locked(const std::vector<Letter>& w) const;
    std::vector<std::vector<Letter>> targets_locked(long depth) const;
    std::vector<Letter> parse_vertex(std::string_view v) const;

    int m_;
    Expression d_;
    mutable std::mutex lock_;
    mutable std::vector<Step> steps_;
    mutable std::set<std::vector<Letter>> hit_;      ///< prefixes of scheduled points
    mutable std::set<std::vector<Letter>> removed_;  ///< roots of removed branches
};

/// Z^m lattice: letter i moves coordinate i by +-1. Vertices "z:x1,...,xm".
class CommutatorGraph final : public LabeledGraph {
public:
    explicit CommutatorGraph(int m) : m_(m) {}
    int rank() const override { return m_; }
    std::string basepoint() const override;
    std::optional<std::string> target(std::string_view v, Letter l) const override;
    bool is_finite() const override { return false; }
    bool is_complete() const override { return true; }
    CoreStatus core_status(std::string_view) const override { return CoreStatus::in_core; }
    std::optional<bool> enters_branch(std::string_view, Letter) const override { return false; }
    std::optional<long> distance_from_basepoint(std::string_view v) const override;

private:
    std::vector<long> coords(std::string_view v) const;
    int m_;
};

/// Index-2 kernel of the length parity map: every letter swaps v0 and v1.
FiniteGraph even_kernel_graph(int m);

/// contradicted: the computed check disagrees with the stated value.
enum class ClaimStatus { confirmed, consistent_empirical, out_of_reach, contradicted };
std::string to_string(ClaimStatus s);

struct ReportRow {
    std::string claim;
    std::string tag;  ///< "claimed" or "derived"
    std::string evidence;
    ClaimStatus status = ClaimStatus::out_of_reach;
};

struct ReportOptions {
    int depth = 30;
    int n_max = 30;
    std::uint64_t seed = 1;
    long trials = 1000;
    long steps = 2000;
    int threads = 1;
    int sweep_depth = 4;
};

/// Binds each claim about a family to a computed check.
std::vector<ReportRow> expected_vs_computed(const Family& f, const ReportOptions& opts = {});

}  // namespace schreier
