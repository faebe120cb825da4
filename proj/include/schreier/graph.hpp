#pragma once

#include "schreier/words.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace schreier {

enum class CoreStatus { in_core, in_branch, unknown };

std::string to_string(CoreStatus s);

/// Partial action of the 2m letters on a vertex set, seen from a basepoint.
///
/// Implementations are immutable (lazy ones may memoize behind a lock), so
/// every query is safe to call concurrently.
class LabeledGraph {
public:
    virtual ~LabeledGraph() = default;

    virtual int rank() const = 0;
    virtual std::string basepoint() const = 0;
    /// nullopt when the transition is absent (only in incomplete graphs).
    virtual std::optional<std::string> target(std::string_view v, Letter l) const = 0;
    virtual bool is_finite() const = 0;
    virtual bool is_complete() const = 0;

    virtual CoreStatus core_status(std::string_view v) const;
    /// Whether following (v, l) enters a hanging branch, i.e. a cycle-free
    /// subtree not containing the basepoint that is attached only through
    /// this edge. Absent transitions of an incomplete graph count as such
    /// (a branch is attached there in the completed Schreier graph).
    virtual std::optional<bool> enters_branch(std::string_view v, Letter l) const;
    /// Graph distance from the basepoint when the graph knows it cheaply.
    virtual std::optional<long> distance_from_basepoint(std::string_view v) const;
};

using GraphPtr = std::shared_ptr<const LabeledGraph>;

/// Finite graph stored by vertex index. Missing transitions are -1.
class FiniteGraph final : public LabeledGraph {
public:
    /// Validates determinism, involution and connectivity from the basepoint.
    FiniteGraph(int m, std::vector<std::string> names, std::vector<int> trans, int basepoint = 0);

    int rank() const override { return m_; }
    std::string basepoint() const override { return names_[basepoint_]; }
    std::optional<std::string> target(std::string_view v, Letter l) const override;
    bool is_finite() const override { return true; }
    bool is_complete() const override;
    CoreStatus core_status(std::string_view v) const override;
    std::optional<bool> enters_branch(std::string_view v, Letter l) const override;
    std::optional<long> distance_from_basepoint(std::string_view v) const override;

    int size() const noexcept { return static_cast<int>(names_.size()); }
    int basepoint_index() const noexcept { return basepoint_; }
    const std::string& name(int v) const { return names_[v]; }
    std::optional<int> index_of(std::string_view name) const;
    int at(int v, Letter l) const { return trans_[static_cast<std::size_t>(v) * 2 * m_ + l]; }
    const std::vector<int>& transitions() const noexcept { return trans_; }

    long positive_edge_count() const;
    /// True when the stored edge (v, l) is a bridge whose far side has no
    /// basepoint and no cycle.
    bool is_stored_stem(int v, Letter l) const { return stem_[static_cast<std::size_t>(v) * 2 * m_ + l] != 0; }
    bool in_absolute_core(int v) const { return in_core_[v] != 0; }
    bool core_empty() const;

    /// Renumbered in BFS order from the basepoint (letters in order), names
    /// "v0", "v1", ...
    FiniteGraph canonical() const;
    /// Text encoding of the canonical numbering; equal iff the two graphs are
    /// label-isomorphic by a basepoint-preserving map.
    std::string canonical_form() const;

private:
    void compute_structure();

    int m_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> trans_;
    int basepoint_;
    std::vector<char> stem_;
    std::vector<char> in_core_;
    std::vector<long> dist_;
};

bool isomorphic(const FiniteGraph& a, const FiniteGraph& b);

struct FoldReport {
    std::vector<ReducedWord> generators;
    int vertices = 0;
    long positive_edges = 0;
    bool complete = false;
    std::optional<long> index;  ///< nullopt means infinite index
    long rank = 0;               ///< positive edges - vertices + 1
};

FoldReport make_report(const FiniteGraph& g, std::vector<ReducedWord> generators = {});

struct FoldResult {
    FiniteGraph graph;
    FoldReport report;
};

/// Stallings folding of the bouquet of generator petals, vertices numbered
/// canonically.
FoldResult fold(const Alphabet& alphabet, const std::vector<ReducedWord>& generators);

struct CoreResult {
    std::optional<FiniteGraph> core;  ///< nullopt when the core is empty
    ReducedWord entry_path;           ///< geodesic from the basepoint to the core
    bool degenerate = false;          ///< empty core (trivial subgroup)
};

/// Absolute core by iterated removal of valence-1 vertices (a loop counts
/// twice). The basepoint of the returned core is the vertex where the
/// basepoint's geodesic enters it.
CoreResult core(const FiniteGraph& g);

/// End vertex of the path reading w from `start`, nullopt if it leaves the
/// stored transitions.
std::optional<std::string> trace(const LabeledGraph& g, std::string_view start, const ReducedWord& w);

/// w lies in the subgroup iff its path from the basepoint closes up.
bool membership(const LabeledGraph& g, const ReducedWord& w);

inline constexpr int kStem = -1;    ///< edge enters a hanging branch
inline constexpr int kBeyond = -2;  ///< target lies outside the explored ball

/// Breadth-first exploration of a graph from its basepoint, letters taken
/// in alphabet order. Hanging branches are not entered: their edges are
/// recorded as kStem and accounted for analytically by callers.
///
/// Because the queue is FIFO and letters are tried in order, the discovering
/// edge of every vertex is the last edge of its lexicographically minimal
/// geodesic, so parent/parent_letter form the canonical geodesic tree.
struct Ball {
    int m = 0;
    int radius = -1;         ///< -1: the whole (finite) graph
    bool exhaustive = false; ///< no kBeyond transitions anywhere
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::vector<int> trans;
    std::vector<int> depth;
    std::vector<CoreStatus> status;
    std::vector<int> parent;       ///< -1 at the root
    std::vector<Letter> parent_letter;

    int size() const noexcept { return static_cast<int>(names.size()); }
    int at(int v, Letter l) const { return trans[static_cast<std::size_t>(v) * 2 * m + l]; }
    /// Edge (v, l) is traversed by the tree (in either direction).
    bool is_tree_edge(int v, Letter l) const;
    /// Letters of the tree path from the root to v.
    ReducedWord tree_word(int v) const;
};

/// radius < 0 explores a finite graph completely; lazy graphs need a radius.
Ball explore(const LabeledGraph& g, int radius = -1);

}  // namespace schreier
