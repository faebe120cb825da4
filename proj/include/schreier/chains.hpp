#pragma once

#include "schreier/boundary.hpp"
#include "schreier/graph.hpp"
#include "schreier/nielsen_schreier.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace schreier {

/// Worker count for simulations; 0 means the available hardware threads.
int resolve_threads(int requested);

struct SrwTrial {
    std::string final_vertex;
    std::string attach_vertex;     ///< last core-side vertex before the current branch
    std::size_t branch_depth = 0;  ///< 0 when not inside a hanging branch
    bool in_branch = false;
    std::optional<long> distance;  ///< from the basepoint, when the graph knows it
    long max_distance = -1;        ///< -1 when distances are unknown
};

struct SrwStats {
    long steps = 0;
    std::uint64_t seed = 0;
    std::vector<SrwTrial> trials;  ///< in trial order
    double branch_fraction = 0.0;
    double branch_fraction_stderr = 0.0;
    std::optional<double> mean_distance;
    std::optional<double> mean_distance_stderr;
};

/// Simple random walk: each step picks one of the 2m letters uniformly (a
/// loop stays put). Inside a hanging branch the walk is tracked as a letter
/// stack above its attachment vertex. Trial k uses RNG stream k, so the
/// output does not depend on `threads`. The graph must be complete.
SrwStats srw_simulate(const LabeledGraph& g, long steps, long trials, std::uint64_t seed, int threads = 1);

struct ThetaEntry {
    GenLetter s = 0;
    std::optional<MeasureValue> exact;
    double estimate = 0.0;
    double stderr_ = 0.0;
};

/// Distribution of the first non-tree directed edge crossed by the
/// non-backtracking edge chain started uniformly on the 2m edges at o.
struct EdgeChainReport {
    bool exact = false;
    std::vector<ThetaEntry> theta;  ///< ordered by signed generator
    MeasureValue exact_total;       ///< exact route only
    long trials = 0;                ///< Monte Carlo route only
    std::uint64_t seed = 0;
    double escaped = 0.0;   ///< fraction entering a hanging branch first
    double censored = 0.0;  ///< fraction leaving the explored ball first
};

/// Exact solve of the absorbing system on tree edges by Gaussian elimination
/// over the rationals. Needs a finite complete graph (no stems, exhaustive
/// ball).
EdgeChainReport edge_chain_first_nontree(const NSBasis& basis);

/// Sampling estimate with standard errors; works on any explored ball.
/// A walk that enters a hanging branch never meets a non-tree edge again;
/// one that leaves the ball, or is still in the tree after `max_steps`, is
/// censored.
EdgeChainReport edge_chain_monte_carlo(const NSBasis& basis, long trials, std::uint64_t seed, int threads = 1,
                                       long max_steps = 10000);

/// Markov chain on the symmetric basis: initial law theta, transitions
/// M(s, s') = (2m-1)^{|sigma(s')| - |sigma(s) sigma(s')|} theta(s') / theta(s)
/// with M(s, s^-1) = 0. Indexed by signed generator.
struct CycleChain {
    int m = 0;
    std::vector<MeasureValue> theta;
    std::vector<std::vector<MeasureValue>> M;

    std::size_t size() const noexcept { return theta.size(); }
};

/// Throws DomainError unless the basis is complete and finite, theta sums to
/// 1 and every row of M sums to exactly 1.
CycleChain cycle_chain_build(const NSBasis& basis, const std::vector<MeasureValue>& theta);

/// theta of an exact edge-chain report as a vector indexed by signed generator.
std::vector<MeasureValue> exact_theta(const EdgeChainReport& report);

struct CycleSample {
    std::vector<GenLetter> xi;
    ReducedWord boundary_prefix;  ///< prefix of sigma^infinity(xi)
};

/// One path of `steps` basis letters; sample k of a batch uses stream k.
CycleSample cycle_chain_simulate(const CycleChain& chain, const NSBasis& basis, long steps, std::uint64_t seed,
                                 std::uint64_t stream = 0);
std::vector<CycleSample> cycle_chain_sample(const CycleChain& chain, const NSBasis& basis, long steps, long samples,
                                            std::uint64_t seed, int threads = 1);

struct CylinderValue {
    ReducedWord word;
    MeasureValue value;
};

/// Exact image measure of every dimension-`dim` cylinder of the boundary
/// under sigma^infinity, from theta and M; sorted by word.
std::vector<CylinderValue> cycle_chain_cylinders(const CycleChain& chain, const NSBasis& basis, int dim);

struct TransienceReport {
    int depth = 0;
    std::vector<MeasureValue> partial_sums;  ///< n = 0..depth
    std::string verdict;                     ///< transient, recurrent, or an *_empirical tendency
    bool certified = false;
    std::string certificate;
};

/// Transience of the simple random walk from the cogrowth series at
/// 1/(2m-1). Certified for finite index (recurrent), for finite cores whose
/// non-backtracking spectral radius is certified below 2m-1 (transient) and
/// from family metadata; otherwise the trend of the partial sums.
TransienceReport transience_report(const LabeledGraph& g, int depth,
                                   std::optional<bool> family_transient = std::nullopt,
                                   const std::string& family_source = "");

}  // namespace schreier
