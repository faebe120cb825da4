#pragma once

#include "schreier/graph.hpp"

#include <string>
#include <string_view>

namespace schreier {

/// A (possibly infinite) base graph whose deficient valencies are filled
/// with hanging branches. Branch vertices are named "root~word": the base
/// vertex the branch hangs from, then the reduced word read from it. Base
/// vertex ids must not contain '~'.
class BranchFilledGraph : public LabeledGraph {
public:
    std::optional<std::string> target(std::string_view v, Letter l) const override;
    bool is_complete() const override { return true; }
    CoreStatus core_status(std::string_view v) const override;
    std::optional<bool> enters_branch(std::string_view v, Letter l) const override;
    /// Branch vertices add their word length to the distance of the root.
    std::optional<long> distance_from_basepoint(std::string_view v) const override;

protected:
    /// Transition of the base graph; nullopt marks a slot filled by a branch.
    virtual std::optional<std::string> base_target(std::string_view v, Letter l) const = 0;
    virtual CoreStatus base_status(std::string_view v) const = 0;
    /// For stored base edges; slots filled by branches are handled here.
    virtual bool base_enters_branch(std::string_view v, Letter l) const;
    virtual std::optional<long> base_distance(std::string_view v) const;
};

/// Completion of a finite folded graph: the full Schreier graph of the
/// subgroup it represents.
class CompletedGraph final : public BranchFilledGraph {
public:
    explicit CompletedGraph(FiniteGraph g) : g_(std::move(g)) {}

    int rank() const override { return g_.rank(); }
    std::string basepoint() const override { return g_.basepoint(); }
    bool is_finite() const override { return false; }
    const FiniteGraph& stored() const noexcept { return g_; }

protected:
    std::optional<std::string> base_target(std::string_view v, Letter l) const override;
    CoreStatus base_status(std::string_view v) const override;
    bool base_enters_branch(std::string_view v, Letter l) const override;
    std::optional<long> base_distance(std::string_view v) const override;

private:
    FiniteGraph g_;
};

/// Complete input is returned as is.
GraphPtr complete_with_branches(const FiniteGraph& g);

/// Removes the edge (from, label) of a complete graph and hangs a branch in
/// each of the two freed slots. Core answers are taken from the inner graph,
/// which is exact when the removed edge lies on a cycle avoiding it (true
/// for any non-tree edge whose endpoints keep other cycles, as in grids).
class EdgeDeletedGraph final : public BranchFilledGraph {
public:
    EdgeDeletedGraph(GraphPtr inner, std::string from, Letter label);

    int rank() const override { return inner_->rank(); }
    std::string basepoint() const override { return inner_->basepoint(); }
    bool is_finite() const override { return false; }

    const std::string& removed_from() const noexcept { return from_; }
    const std::string& removed_to() const noexcept { return to_; }
    Letter removed_label() const noexcept { return label_; }

protected:
    std::optional<std::string> base_target(std::string_view v, Letter l) const override;
    CoreStatus base_status(std::string_view v) const override;
    bool base_enters_branch(std::string_view v, Letter l) const override;

private:
    GraphPtr inner_;
    std::string from_;
    std::string to_;
    Letter label_;
};

}  // namespace schreier
