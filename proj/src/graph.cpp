#include "schreier/graph.hpp"

#include "schreier/error.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace schreier {

std::string to_string(CoreStatus s) {
    switch (s) {
        case CoreStatus::in_core: return "in_core";
        case CoreStatus::in_branch: return "in_branch";
        case CoreStatus::unknown: break;
    }
    return "unknown";
}

CoreStatus LabeledGraph::core_status(std::string_view) const { return CoreStatus::unknown; }

std::optional<bool> LabeledGraph::enters_branch(std::string_view, Letter) const { return std::nullopt; }

std::optional<long> LabeledGraph::distance_from_basepoint(std::string_view) const { return std::nullopt; }

FiniteGraph::FiniteGraph(int m, std::vector<std::string> names, std::vector<int> trans, int basepoint)
    : m_(m), names_(std::move(names)), trans_(std::move(trans)), basepoint_(basepoint) {
    const Alphabet alphabet(m);
    const int n = size();
    if (n == 0) throw DomainError("graph has no vertices");
    if (trans_.size() != static_cast<std::size_t>(n) * 2 * m) {
        throw DomainError("transition table has the wrong size");
    }
    if (basepoint < 0 || basepoint >= n) throw DomainError("basepoint index out of range");
    for (int v = 0; v < n; ++v) {
        const std::string& name = names_[v];
        if (name.empty()) throw DomainError("empty vertex id");
        if (name.find('~') != std::string::npos) {
            throw DomainError("vertex id '" + name + "' contains the reserved character '~'");
        }
        if (!index_.emplace(name, v).second) throw DomainError("duplicate vertex id '" + name + "'");
    }
    for (int v = 0; v < n; ++v) {
        for (Letter l = 0; l < 2 * m; ++l) {
            const int w = at(v, l);
            if (w == -1) continue;
            if (w < 0 || w >= n) throw DomainError("transition target out of range");
            if (at(w, inverse(l)) != v) {
                throw DomainError("transitions are not involutive at vertex '" + names_[v] +
                                  "', letter " + letter_symbol(l));
            }
        }
    }
    std::vector<char> seen(n, 0);
    std::vector<int> stack{basepoint_};
    seen[basepoint_] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (Letter l = 0; l < 2 * m; ++l) {
            const int w = at(v, l);
            if (w >= 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
        throw DomainError("graph is not connected from the basepoint");
    }
    compute_structure();
}

void FiniteGraph::compute_structure() {
    const int n = size();
    const int k = 2 * m_;
    dist_.assign(n, -1);
    dist_[basepoint_] = 0;
    for (std::deque<int> q{basepoint_}; !q.empty(); q.pop_front()) {
        for (Letter l = 0; l < k; ++l) {
            const int w = at(q.front(), l);
            if (w >= 0 && dist_[w] < 0) {
                dist_[w] = dist_[q.front()] + 1;
                q.push_back(w);
            }
        }
    }

    // Absolute core: strip vertices of valence <= 1 until none is left.
    std::vector<int> degree(n, 0);
    for (int v = 0; v < n; ++v) {
        for (Letter l = 0; l < k; ++l) degree[v] += at(v, l) >= 0 ? 1 : 0;
    }
    in_core_.assign(n, 1);
    std::vector<int> work;
    for (int v = 0; v < n; ++v) {
        if (degree[v] <= 1) work.push_back(v);
    }
    while (!work.empty()) {
        const int v = work.back();
        work.pop_back();
        if (!in_core_[v]) continue;
        in_core_[v] = 0;
        for (Letter l = 0; l < k; ++l) {
            const int w = at(v, l);
            if (w < 0 || w == v || !in_core_[w]) continue;
            if (--degree[w] <= 1) work.push_back(w);
        }
    }

    // Relative core: the core plus the geodesic from the basepoint into it.
    std::vector<char> relative(in_core_.begin(), in_core_.end());
    if (core_empty()) {
        relative[basepoint_] = 1;
    } else if (!in_core_[basepoint_]) {
        std::vector<int> from(n, -2);
        std::deque<int> queue{basepoint_};
        from[basepoint_] = -1;
        int hit = -1;
        while (!queue.empty() && hit < 0) {
            const int v = queue.front();
            queue.pop_front();
            for (Letter l = 0; l < k; ++l) {
                const int w = at(v, l);
                if (w < 0 || from[w] != -2) continue;
                from[w] = v;
                if (in_core_[w]) {
                    hit = w;
                    break;
                }
                queue.push_back(w);
            }
        }
        for (int v = hit; v >= 0; v = from[v]) relative[v] = 1;
    }

    // Everything else hangs off the relative core as trees; an edge is a
    // stem when it points away from the relative core.
    stem_.assign(trans_.size(), 0);
    std::deque<int> queue;
    for (int v = 0; v < n; ++v) {
        if (relative[v]) queue.push_back(v);
    }
    std::vector<char> seen(relative);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < k; ++l) {
            const int w = at(v, l);
            if (w < 0 || seen[w]) continue;
            seen[w] = 1;
            stem_[static_cast<std::size_t>(v) * k + l] = 1;
            queue.push_back(w);
        }
    }
}

std::optional<std::string> FiniteGraph::target(std::string_view v, Letter l) const {
    const auto i = index_of(v);
    if (!i) throw DomainError("unknown vertex '" + std::string(v) + "'");
    const int w = at(*i, l);
    if (w < 0) return std::nullopt;
    return names_[w];
}

bool FiniteGraph::is_complete() const {
    return std::find(trans_.begin(), trans_.end(), -1) == trans_.end();
}

CoreStatus FiniteGraph::core_status(std::string_view v) const {
    const auto i = index_of(v);
    if (!i) throw DomainError("unknown vertex '" + std::string(v) + "'");
    return in_core_[*i] ? CoreStatus::in_core : CoreStatus::in_branch;
}

std::optional<long> FiniteGraph::distance_from_basepoint(std::string_view v) const {
    const auto i = index_of(v);
    if (!i) throw DomainError("unknown vertex '" + std::string(v) + "'");
    return dist_[*i];
}

std::optional<bool> FiniteGraph::enters_branch(std::string_view v, Letter l) const {
    const auto i = index_of(v);
    if (!i) throw DomainError("unknown vertex '" + std::string(v) + "'");
    return at(*i, l) < 0 || is_stored_stem(*i, l);
}

std::optional<int> FiniteGraph::index_of(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

long FiniteGraph::positive_edge_count() const {
    long count = 0;
    for (int v = 0; v < size(); ++v) {
        for (Letter l = 0; l < 2 * m_; l += 2) count += at(v, l) >= 0 ? 1 : 0;
    }
    return count;
}

bool FiniteGraph::core_empty() const {
    return std::find(in_core_.begin(), in_core_.end(), 1) == in_core_.end();
}

FiniteGraph FiniteGraph::canonical() const {
    const int n = size();
    const int k = 2 * m_;
    std::vector<int> order;
    std::vector<int> renumber(n, -1);
    order.reserve(n);
    order.push_back(basepoint_);
    renumber[basepoint_] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (Letter l = 0; l < k; ++l) {
            const int w = at(order[i], l);
            if (w >= 0 && renumber[w] < 0) {
                renumber[w] = static_cast<int>(order.size());
                order.push_back(w);
            }
        }
    }
    std::vector<std::string> names(n);
    std::vector<int> trans(trans_.size(), -1);
    for (int i = 0; i < n; ++i) {
        names[i] = "v" + std::to_string(i);
        for (Letter l = 0; l < k; ++l) {
            const int w = at(order[i], l);
            trans[static_cast<std::size_t>(i) * k + l] = w < 0 ? -1 : renumber[w];
        }
    }
    return FiniteGraph(m_, std::move(names), std::move(trans), 0);
}

std::string FiniteGraph::canonical_form() const {
    const FiniteGraph c = canonical();
    std::string out = std::to_string(m_) + ";" + std::to_string(c.size()) + ";";
    for (int t : c.trans_) {
        out += std::to_string(t);
        out += ',';
    }
    return out;
}

bool isomorphic(const FiniteGraph& a, const FiniteGraph& b) {
    return a.canonical_form() == b.canonical_form();
}

FoldReport make_report(const FiniteGraph& g, std::vector<ReducedWord> generators) {
    FoldReport r;
    r.generators = std::move(generators);
    r.vertices = g.size();
    r.positive_edges = g.positive_edge_count();
    r.complete = g.is_complete();
    if (r.complete) r.index = g.size();
    r.rank = r.positive_edges - r.vertices + 1;
    return r;
}

namespace {

class Folder {
public:
    explicit Folder(int m) : k_(2 * m) { add_vertex(); }

    int add_vertex() {
        parent_.push_back(static_cast<int>(parent_.size()));
        trans_.insert(trans_.end(), k_, -1);
        return static_cast<int>(parent_.size()) - 1;
    }

    int find(int v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    void add_edge(int x, Letter l, int y) {
        attach(find(x), l, find(y));
        attach(find(y), inverse(l), find(x));
        drain();
    }

    FiniteGraph finish(int m) {
        std::vector<int> compact(parent_.size(), -1);
        std::vector<int> reps;
        for (int v = 0; v < static_cast<int>(parent_.size()); ++v) {
            if (find(v) == v) {
                compact[v] = static_cast<int>(reps.size());
                reps.push_back(v);
            }
        }
        std::vector<std::string> names(reps.size());
        std::vector<int> trans(reps.size() * k_, -1);
        for (std::size_t i = 0; i < reps.size(); ++i) {
            names[i] = "v" + std::to_string(i);
            for (Letter l = 0; l < k_; ++l) {
                const int w = trans_[static_cast<std::size_t>(reps[i]) * k_ + l];
                if (w >= 0) trans[i * k_ + l] = compact[find(w)];
            }
        }
        return FiniteGraph(m, std::move(names), std::move(trans), compact[find(0)]).canonical();
    }

private:
    int& slot(int v, Letter l) { return trans_[static_cast<std::size_t>(v) * k_ + l]; }

    void attach(int x, Letter l, int y) {
        int& s = slot(x, l);
        if (s < 0) {
            s = y;
        } else if (find(s) != y) {
            pending_.emplace_back(s, y);
        }
    }

    void drain() {
        while (!pending_.empty()) {
            auto [a, b] = pending_.back();
            pending_.pop_back();
            a = find(a);
            b = find(b);
            if (a == b) continue;
            if (a < b) std::swap(a, b);
            // Merge a into b; b keeps its slots, conflicting targets are
            // queued for merging in turn.
            parent_[a] = b;
            for (Letter l = 0; l < k_; ++l) {
                const int t = slot(a, l);
                if (t < 0) continue;
                int& s = slot(b, l);
                if (s < 0) {
                    s = t;
                } else if (find(s) != find(t)) {
                    pending_.emplace_back(s, t);
                }
            }
        }
    }

    int k_;
    std::vector<int> parent_;
    std::vector<int> trans_;
    std::vector<std::pair<int, int>> pending_;
};

}  // namespace

FoldResult fold(const Alphabet& alphabet, const std::vector<ReducedWord>& generators) {
    Folder folder(alphabet.rank());
    std::vector<ReducedWord> used;
    for (const ReducedWord& w : generators) {
        if (w.min_rank() > alphabet.rank()) {
            throw DomainError("generator '" + to_string(w) + "' uses letters beyond rank " +
                              std::to_string(alphabet.rank()));
        }
        if (w.empty()) continue;
        used.push_back(w);
        int at = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const int next = i + 1 == w.size() ? 0 : folder.add_vertex();
            folder.add_edge(at, w[i], next);
            at = next;
        }
    }
    FiniteGraph g = folder.finish(alphabet.rank());
    FoldReport report = make_report(g, std::move(used));
    return FoldResult{std::move(g), std::move(report)};
}

CoreResult core(const FiniteGraph& g) {
    CoreResult out;
    const int n = g.size();
    const int k = 2 * g.rank();
    if (g.core_empty()) {
        out.degenerate = true;
        return out;
    }
    std::vector<int> from(n, -2);
    std::vector<Letter> via(n, -1);
    std::deque<int> queue{g.basepoint_index()};
    from[g.basepoint_index()] = -1;
    int entry = g.in_absolute_core(g.basepoint_index()) ? g.basepoint_index() : -1;
    while (entry < 0 && !queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (Letter l = 0; l < k && entry < 0; ++l) {
            const int w = g.at(v, l);
            if (w < 0 || from[w] != -2) continue;
            from[w] = v;
            via[w] = l;
            if (g.in_absolute_core(w)) entry = w;
            queue.push_back(w);
        }
    }
    std::vector<Letter> path;
    for (int v = entry; from[v] >= 0; v = from[v]) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    out.entry_path = ReducedWord::from_reduced(std::move(path));

    std::vector<int> renumber(n, -1);
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) {
        if (g.in_absolute_core(v)) {
            renumber[v] = static_cast<int>(names.size());
            names.push_back(g.name(v));
        }
    }
    std::vector<int> trans(names.size() * k, -1);
    for (int v = 0; v < n; ++v) {
        if (renumber[v] < 0) continue;
        for (Letter l = 0; l < k; ++l) {
            const int w = g.at(v, l);
            if (w >= 0 && renumber[w] >= 0) trans[static_cast<std::size_t>(renumber[v]) * k + l] = renumber[w];
        }
    }
    out.core.emplace(g.rank(), std::move(names), std::move(trans), renumber[entry]);
    return out;
}

std::optional<std::string> trace(const LabeledGraph& g, std::string_view start, const ReducedWord& w) {
    std::string at(start);
    for (Letter l : w.letters()) {
        if (generator_of(l) >= g.rank()) return std::nullopt;
        auto next = g.target(at, l);
        if (!next) return std::nullopt;
        at = std::move(*next);
    }
    return at;
}

bool membership(const LabeledGraph& g, const ReducedWord& w) {
    const auto end = trace(g, g.basepoint(), w);
    return end && *end == g.basepoint();
}

bool Ball::is_tree_edge(int v, Letter l) const {
    const int w = at(v, l);
    if (w == kStem) return true;
    if (w == kBeyond) throw DepthError("edge leaves the explored ball of radius " + std::to_string(radius));
    return (parent[w] == v && parent_letter[w] == l) || (parent[v] == w && parent_letter[v] == inverse(l));
}

ReducedWord Ball::tree_word(int v) const {
    std::vector<Letter> letters;
    for (; parent[v] >= 0; v = parent[v]) letters.push_back(parent_letter[v]);
    std::reverse(letters.begin(), letters.end());
    return ReducedWord::from_reduced(std::move(letters));
}

Ball explore(const LabeledGraph& g, int radius) {
    if (radius < 0 && !g.is_finite()) {
        throw DepthError("an infinite graph can only be explored to a finite radius");
    }
    Ball b;
    b.m = g.rank();
    b.radius = radius;
    const int k = 2 * b.m;
    auto add = [&](std::string name, int depth, int parent, Letter via) {
        const int id = b.size();
        b.index.emplace(name, id);
        b.names.push_back(std::move(name));
        b.depth.push_back(depth);
        b.parent.push_back(parent);
        b.parent_letter.push_back(via);
        b.trans.insert(b.trans.end(), k, kBeyond);
        return id;
    };
    add(g.basepoint(), 0, -1, -1);
    b.exhaustive = true;
    for (int i = 0; i < b.size(); ++i) {
        const std::string v = b.names[i];
        const int d = b.depth[i];
        for (Letter l = 0; l < k; ++l) {
            int result;
            if (b.parent[i] >= 0 && l == inverse(b.parent_letter[i])) {
                result = b.parent[i];
            } else if (g.enters_branch(v, l).value_or(false)) {
                result = kStem;
            } else if (auto t = g.target(v, l); !t) {
                result = kStem;
            } else if (auto it = b.index.find(*t); it != b.index.end()) {
                result = it->second;
            } else if (radius >= 0 && d >= radius) {
                result = kBeyond;
                b.exhaustive = false;
            } else {
                result = add(std::move(*t), d + 1, i, l);
            }
            b.trans[static_cast<std::size_t>(i) * k + l] = result;
        }
    }
    b.status.reserve(b.size());
    for (const std::string& v : b.names) b.status.push_back(g.core_status(v));
    return b;
}

}  // namespace schreier
