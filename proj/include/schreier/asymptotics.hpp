#pragma once

#include "schreier/graph.hpp"
#include "schreier/nielsen_schreier.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace schreier {

struct SphereRow {
    int n = 0;
    BigInt sphere;                ///< |S^n|
    std::optional<BigInt> gamma;  ///< non-tree edge-ends on S^n, known for n < depth
    MeasureValue a_ratio;         ///< |S^n| / (2m (2m-1)^{n-1}), 1 at n = 0
    MeasureValue a_sum;           ///< 1 - (1/2m) sum_{k<n} gamma_k / (2m-1)^k
};

struct SphereTable {
    int m = 0;
    int depth = 0;
    std::vector<SphereRow> rows;  ///< n = 0..depth
    bool routes_agree = true;
    bool monotone = true;
    bool recurrence_holds = true;

    /// a_depth, an upper bound for the measure of the fundamental domain.
    const MeasureValue& mu_delta_upper() const { return rows.back().a_ratio; }
};

/// Level data (|S^n|, gamma_n) for n = 0..depth; gamma of the last level
/// may be absent.
using SphereProfile = std::vector<std::pair<BigInt, std::optional<BigInt>>>;

/// Counts from an explored ball: vertices at each depth plus the hanging
/// branches below stems, which contribute (2m-1)^{n-j-1} at level n for a
/// stem leaving depth j. Needs radius >= depth unless the ball is exhaustive.
SphereProfile sphere_profile(const Ball& ball, int depth);
SphereTable sphere_table(int m, const SphereProfile& profile);
SphereTable sphere_table(const LabeledGraph& g, int depth);

/// c_n = |H cap S_F^n| for n = 0..depth, by dynamic programming over the
/// directed edges of the ball (radius >= ceil(depth/2) or exhaustive).
std::vector<BigInt> cogrowth_counts(const Ball& ball, int depth);
std::vector<BigInt> cogrowth_counts(const LabeledGraph& g, int depth);

/// Non-backtracking operator on the directed edges of a finite graph.
class HashimotoOperator {
public:
    explicit HashimotoOperator(const FiniteGraph& g);

    std::size_t size() const noexcept { return heads_.size(); }
    /// y = B x
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    std::size_t row_degree(std::size_t e) const { return succ_start_[e + 1] - succ_start_[e]; }

private:
    std::vector<int> heads_;
    std::vector<std::size_t> succ_start_;
    std::vector<std::size_t> succ_;
};

struct CogrowthEstimate {
    bool certified = false;
    bool degenerate = false;   ///< empty core: H trivial
    double value = 0.0;
    double lower = 0.0;        ///< Collatz-Wielandt bounds (certified route)
    double upper = 0.0;
    long iterations = 0;
    std::vector<double> root_estimates;  ///< c_n^{1/n} (lazy route)
    std::string method;
};

/// Finite graphs: spectral radius of the non-backtracking operator of the
/// absolute core by shifted power iteration (tolerance 1e-9, at most 1e5
/// iterations, all-ones start). Lazy graphs: raw c_n^{1/n}.
CogrowthEstimate vH_estimate(const FiniteGraph& g);
CogrowthEstimate vH_estimate(const LabeledGraph& g, int depth);

/// Spectral radius of the simple random walk from the cogrowth.
double rho_from_vH(double vH, int m);

struct ReturnProbability {
    int steps = 0;             ///< 2n
    MeasureValue probability;  ///< p_{2n}(o, o)
    double root = 0.0;         ///< p^{1/2n}
};

/// Exact p_{2n}(o,o), n = 1..max_half_steps, on the completed graph.
std::vector<ReturnProbability> rho_direct(const LabeledGraph& g, int max_half_steps);

/// sum_{n <= depth} c_n (2m-1)^{-n}
MeasureValue poincare_partial(const std::vector<BigInt>& cogrowth, int m, int depth);

/// What is known about the subgroup beyond its graph.
struct SubgroupFacts {
    std::optional<bool> finitely_generated;
    std::optional<long> index;  ///< set when finite
    bool infinite_index_known = false;
    bool normal_nontrivial = false;
    std::optional<double> growth;  ///< growth rate of the Schreier graph, when known
    std::string source;            ///< where the facts come from
};

SubgroupFacts facts_of(const FiniteGraph& g);

enum class Classification { conservative_ergodic, conservative, completely_dissipative, mixed, empirical, unknown };
std::string to_string(Classification c);

struct LedgerEntry {
    std::string certificate;
    std::string detail;
};

struct Verdict {
    Classification classification = Classification::unknown;
    bool certified = false;
    std::string tendency;  ///< for empirical verdicts
    std::vector<LedgerEntry> ledger;
    int depth = 0;
    std::optional<MeasureValue> a_depth;  ///< a_n at the sphere-table depth, as evidence
};

/// Certified when one of the known criteria applies: finite index
/// (conservative and ergodic), finitely generated of infinite index
/// (completely dissipative), certified cogrowth below sqrt(2m-1)
/// (completely dissipative), nontrivial normal subgroup (conservative),
/// Schreier graph growth below 2m-1 (conservative). Otherwise the a_n
/// table gives an empirical tendency only. `profile`, when given, replaces
/// the breadth-first sphere counts (radially described families).
Verdict classify(const LabeledGraph& g, const SubgroupFacts& facts, int depth,
                 const SphereProfile* profile = nullptr);

}  // namespace schreier
