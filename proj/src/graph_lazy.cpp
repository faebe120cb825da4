#include "schreier/graph_lazy.hpp"

#include "schreier/error.hpp"

namespace schreier {

namespace {

struct BranchAddress {
    std::string_view root;
    std::string_view word;
};

std::optional<BranchAddress> split_branch(std::string_view v) {
    const std::size_t tilde = v.find('~');
    if (tilde == std::string_view::npos) return std::nullopt;
    return BranchAddress{v.substr(0, tilde), v.substr(tilde + 1)};
}

Letter symbol_letter(char c) { return c >= 'a' ? 2 * (c - 'a') : 2 * (c - 'A') + 1; }

}  // namespace

std::optional<std::string> BranchFilledGraph::target(std::string_view v, Letter l) const {
    if (auto addr = split_branch(v)) {
        if (addr->word.empty()) throw DomainError("malformed branch vertex id '" + std::string(v) + "'");
        const Letter last = symbol_letter(addr->word.back());
        if (l == inverse(last)) {
            if (addr->word.size() == 1) return std::string(addr->root);
            return std::string(v.substr(0, v.size() - 1));
        }
        std::string child(v);
        child.push_back(letter_symbol(l));
        return child;
    }
    if (auto t = base_target(v, l)) return t;
    std::string child(v);
    child.push_back('~');
    child.push_back(letter_symbol(l));
    return child;
}

CoreStatus BranchFilledGraph::core_status(std::string_view v) const {
    if (split_branch(v)) return CoreStatus::in_branch;
    return base_status(v);
}

std::optional<bool> BranchFilledGraph::enters_branch(std::string_view v, Letter l) const {
    if (auto addr = split_branch(v)) {
        return l != inverse(symbol_letter(addr->word.back()));
    }
    if (!base_target(v, l)) return true;
    return base_enters_branch(v, l);
}

std::optional<long> BranchFilledGraph::distance_from_basepoint(std::string_view v) const {
    if (auto addr = split_branch(v)) {
        auto d = base_distance(addr->root);
        if (d) *d += static_cast<long>(addr->word.size());
        return d;
    }
    return base_distance(v);
}

bool BranchFilledGraph::base_enters_branch(std::string_view, Letter) const { return false; }

std::optional<long> BranchFilledGraph::base_distance(std::string_view) const { return std::nullopt; }

std::optional<std::string> CompletedGraph::base_target(std::string_view v, Letter l) const {
    return g_.target(v, l);
}

CoreStatus CompletedGraph::base_status(std::string_view v) const { return g_.core_status(v); }

bool CompletedGraph::base_enters_branch(std::string_view v, Letter l) const {
    return g_.enters_branch(v, l).value_or(false);
}

std::optional<long> CompletedGraph::base_distance(std::string_view v) const {
    return g_.distance_from_basepoint(v);
}

GraphPtr complete_with_branches(const FiniteGraph& g) {
    if (g.is_complete()) return std::make_shared<FiniteGraph>(g);
    return std::make_shared<CompletedGraph>(g);
}

EdgeDeletedGraph::EdgeDeletedGraph(GraphPtr inner, std::string from, Letter label)
    : inner_(std::move(inner)), from_(std::move(from)), label_(label) {
    if (from_.find('~') != std::string::npos) {
        throw DomainError("cannot delete an edge inside a hanging branch");
    }
    auto to = inner_->target(from_, label_);
    if (!to) throw DomainError("edge to delete does not exist");
    to_ = std::move(*to);
}

std::optional<std::string> EdgeDeletedGraph::base_target(std::string_view v, Letter l) const {
    if ((l == label_ && v == from_) || (l == inverse(label_) && v == to_)) return std::nullopt;
    return inner_->target(v, l);
}

CoreStatus EdgeDeletedGraph::base_status(std::string_view v) const { return inner_->core_status(v); }

bool EdgeDeletedGraph::base_enters_branch(std::string_view v, Letter l) const {
    return inner_->enters_branch(v, l).value_or(false);
}

}  // namespace schreier
