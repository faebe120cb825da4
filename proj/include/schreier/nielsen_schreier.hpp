#pragma once

#include "schreier/graph.hpp"
#include "schreier/graph_lazy.hpp"

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace schreier {

/// Letter of the basis alphabet: generator i is 2i, its inverse 2i+1.
using GenLetter = int;

constexpr GenLetter gen_inverse(GenLetter x) noexcept { return x ^ 1; }
constexpr int gen_id(GenLetter x) noexcept { return x >> 1; }
constexpr bool gen_positive(GenLetter x) noexcept { return (x & 1) == 0; }

/// Lexicographically minimal geodesic spanning tree over an explored ball.
class SpanningTree {
public:
    explicit SpanningTree(std::shared_ptr<const Ball> ball);

    const Ball& ball() const noexcept { return *ball_; }
    std::shared_ptr<const Ball> ball_ptr() const noexcept { return ball_; }
    int rank() const noexcept { return ball_->m; }
    /// The exploration stopped at a finite radius.
    bool partial() const noexcept { return !ball_->exhaustive; }
    int depth(int v) const { return ball_->depth[v]; }
    ReducedWord word(int v) const { return ball_->tree_word(v); }
    bool is_tree_edge(int v, Letter l) const { return ball_->is_tree_edge(v, l); }

private:
    std::shared_ptr<const Ball> ball_;
};

/// depth < 0 explores a finite graph completely.
SpanningTree geodesic_tree(const LabeledGraph& g, int depth = -1);

/// Generator attached to the positively oriented non-tree edge from -a-> to.
struct NSGenerator {
    int id = 0;
    int from = 0;  ///< ball index
    Letter label = 0;
    int to = 0;
    ReducedWord minus;  ///< tree word of `from`
    Letter middle = 0;
    ReducedWord plus;   ///< inverse of the tree word of `to`
    ReducedWord word;   ///< minus . middle . plus, reduced as written
};

class NSBasis {
public:
    explicit NSBasis(SpanningTree tree);

    const SpanningTree& tree() const noexcept { return tree_; }
    const Ball& ball() const noexcept { return tree_.ball(); }
    int m() const noexcept { return tree_.rank(); }
    const std::vector<NSGenerator>& generators() const noexcept { return gens_; }
    std::size_t rank() const noexcept { return gens_.size(); }
    /// Only the generators inside the explored ball are known.
    bool partial() const noexcept { return tree_.partial(); }

    /// Signed generator crossed by the directed edge (v, l), -1 for tree edges.
    GenLetter edge_generator(int v, Letter l) const;

    ReducedWord sigma(GenLetter x) const;
    ReducedWord sigma_minus(GenLetter x) const;
    Letter sigma_middle(GenLetter x) const;
    ReducedWord sigma_plus(GenLetter x) const;
    /// reduce(sigma_plus(x) sigma_minus(y)): the junction between consecutive
    /// generators in a product.
    ReducedWord junction(GenLetter x, GenLetter y) const;

    std::string name(GenLetter x) const;
    GenLetter parse_name(std::string_view text) const;

private:
    void check(GenLetter x) const;

    SpanningTree tree_;
    std::vector<NSGenerator> gens_;
    std::vector<GenLetter> edge_gen_;
};

NSBasis extract_basis(const SpanningTree& tree);

/// Throws DomainError when some x_i x_{i+1} cancel.
void require_reduced(std::span<const GenLetter> xs);

/// Basis expression of w in H; MembershipError when w is not in H.
std::vector<GenLetter> rewrite_to_basis(const NSBasis& basis, const ReducedWord& w);

/// Product of the generators, assembled junction by junction so that every
/// middle letter survives.
ReducedWord expand_from_basis(const NSBasis& basis, std::span<const GenLetter> xs);

std::string format_gen_word(const NSBasis& basis, std::span<const GenLetter> xs);
std::vector<GenLetter> parse_gen_word(const NSBasis& basis, std::string_view text);

/// Folded graph of the subgroup generated by the basis minus generator `id`:
/// the edge is cut and the result pruned back to the relative core.
FiniteGraph delete_generator_graph(const FiniteGraph& g, const NSBasis& basis, int id);

/// Same surgery on a lazy complete graph, keeping it complete by hanging
/// branches in the two freed slots.
std::shared_ptr<const EdgeDeletedGraph> delete_generator_lazy(GraphPtr g, const NSBasis& basis, int id);

}  // namespace schreier
