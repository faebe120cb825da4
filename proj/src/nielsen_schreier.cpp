#include "schreier/nielsen_schreier.hpp"

#include "schreier/error.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cstdlib>

namespace schreier {

SpanningTree::SpanningTree(std::shared_ptr<const Ball> ball) : ball_(std::move(ball)) {
    if (!ball_ || ball_->size() == 0) throw DomainError("spanning tree needs a nonempty explored ball");
}

SpanningTree geodesic_tree(const LabeledGraph& g, int depth) {
    return SpanningTree(std::make_shared<const Ball>(explore(g, depth)));
}

NSBasis::NSBasis(SpanningTree tree) : tree_(std::move(tree)) {
    const Ball& b = tree_.ball();
    const int k = 2 * b.m;
    edge_gen_.assign(b.trans.size(), -1);
    for (int v = 0; v < b.size(); ++v) {
        for (Letter l = 0; l < k; l += 2) {
            const int w = b.at(v, l);
            if (w < 0 || b.is_tree_edge(v, l)) continue;
            NSGenerator s;
            s.id = static_cast<int>(gens_.size());
            s.from = v;
            s.label = l;
            s.to = w;
            s.minus = b.tree_word(v);
            s.middle = l;
            s.plus = b.tree_word(w).inverse();
            std::vector<Letter> letters(s.minus.letters().begin(), s.minus.letters().end());
            letters.push_back(l);
            letters.insert(letters.end(), s.plus.letters().begin(), s.plus.letters().end());
            s.word = ReducedWord::from_reduced(std::move(letters));
            const long dm = static_cast<long>(s.minus.size());
            const long dp = static_cast<long>(s.plus.size());
            if (std::labs(dm - dp) > 1) throw DomainError("spanning tree is not geodesic");
            edge_gen_[static_cast<std::size_t>(v) * k + l] = 2 * s.id;
            edge_gen_[static_cast<std::size_t>(w) * k + inverse(l)] = 2 * s.id + 1;
            gens_.push_back(std::move(s));
        }
    }
}

NSBasis extract_basis(const SpanningTree& tree) { return NSBasis(tree); }

void NSBasis::check(GenLetter x) const {
    if (x < 0 || gen_id(x) >= static_cast<int>(gens_.size())) {
        throw DomainError("unknown generator index " + std::to_string(gen_id(x)));
    }
}

GenLetter NSBasis::edge_generator(int v, Letter l) const {
    return edge_gen_[static_cast<std::size_t>(v) * 2 * m() + l];
}

ReducedWord NSBasis::sigma(GenLetter x) const {
    check(x);
    const ReducedWord& w = gens_[gen_id(x)].word;
    return gen_positive(x) ? w : w.inverse();
}

ReducedWord NSBasis::sigma_minus(GenLetter x) const {
    check(x);
    const NSGenerator& s = gens_[gen_id(x)];
    return gen_positive(x) ? s.minus : s.plus.inverse();
}

Letter NSBasis::sigma_middle(GenLetter x) const {
    check(x);
    const Letter l = gens_[gen_id(x)].middle;
    return gen_positive(x) ? l : inverse(l);
}

ReducedWord NSBasis::sigma_plus(GenLetter x) const {
    check(x);
    const NSGenerator& s = gens_[gen_id(x)];
    return gen_positive(x) ? s.plus : s.minus.inverse();
}

ReducedWord NSBasis::junction(GenLetter x, GenLetter y) const { return sigma_plus(x) * sigma_minus(y); }

std::string NSBasis::name(GenLetter x) const {
    check(x);
    return "s" + std::to_string(gen_id(x)) + (gen_positive(x) ? "" : "^-1");
}

GenLetter NSBasis::parse_name(std::string_view text) const {
    if (text.size() < 2 || text[0] != 's') throw ParseError("generator names look like s3 or s3^-1", 0);
    bool inv = false;
    std::string_view digits = text.substr(1);
    if (digits.size() > 3 && digits.substr(digits.size() - 3) == "^-1") {
        inv = true;
        digits.remove_suffix(3);
    }
    int id = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        throw ParseError("malformed generator name '" + std::string(text) + "'", 1);
    }
    const GenLetter x = 2 * id + (inv ? 1 : 0);
    check(x);
    return x;
}

void require_reduced(std::span<const GenLetter> xs) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
        if (xs[i + 1] == gen_inverse(xs[i])) {
            throw DomainError("basis word is not reduced at position " + std::to_string(i));
        }
    }
}

std::vector<GenLetter> rewrite_to_basis(const NSBasis& basis, const ReducedWord& w) {
    const Ball& b = basis.ball();
    std::vector<GenLetter> out;
    int v = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (generator_of(w[i]) >= b.m) throw DomainError("word uses letters beyond the graph rank");
        const int t = b.at(v, w[i]);
        if (t == kStem) {
            throw MembershipError(to_display(w), "a hanging branch at '" + b.names[v] + "'");
        }
        if (t == kBeyond) {
            throw DepthError("word leaves the explored ball of radius " + std::to_string(b.radius));
        }
        const GenLetter x = basis.edge_generator(v, w[i]);
        if (x >= 0) out.push_back(x);
        v = t;
    }
    if (v != 0) throw MembershipError(to_display(w), b.names[v]);
    return out;
}

ReducedWord expand_from_basis(const NSBasis& basis, std::span<const GenLetter> xs) {
    require_reduced(xs);
    if (xs.empty()) return {};
    std::vector<Letter> letters;
    const ReducedWord head = basis.sigma_minus(xs.front());
    letters.assign(head.letters().begin(), head.letters().end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        letters.push_back(basis.sigma_middle(xs[i]));
        const ReducedWord glue =
            i + 1 < xs.size() ? basis.junction(xs[i], xs[i + 1]) : basis.sigma_plus(xs[i]);
        letters.insert(letters.end(), glue.letters().begin(), glue.letters().end());
    }
    return ReducedWord::from_reduced(std::move(letters));
}

std::string format_gen_word(const NSBasis& basis, std::span<const GenLetter> xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += basis.name(xs[i]);
    }
    return out;
}

std::vector<GenLetter> parse_gen_word(const NSBasis& basis, std::string_view text) {
    std::vector<GenLetter> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ' || text[i] == ',') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && text[j] != ' ' && text[j] != ',') ++j;
        try {
            out.push_back(basis.parse_name(text.substr(i, j - i)));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), i);
        }
        i = j;
    }
    return out;
}

FiniteGraph delete_generator_graph(const FiniteGraph& g, const NSBasis& basis, int id) {
    if (id < 0 || id >= static_cast<int>(basis.rank())) {
        throw DomainError("unknown generator id s" + std::to_string(id));
    }
    const NSGenerator& s = basis.generators()[id];
    const auto from = g.index_of(basis.ball().names[s.from]);
    const auto to = g.index_of(basis.ball().names[s.to]);
    if (!from || !to) throw DomainError("basis does not belong to this graph");
    const int k = 2 * g.rank();
    const int n = g.size();
    std::vector<int> trans = g.transitions();
    trans[static_cast<std::size_t>(*from) * k + s.label] = -1;
    trans[static_cast<std::size_t>(*to) * k + inverse(s.label)] = -1;

    // Prune back to the relative core: strip valence <= 1 vertices other
    // than the basepoint.
    std::vector<int> degree(n, 0);
    for (int v = 0; v < n; ++v) {
        for (Letter l = 0; l < k; ++l) degree[v] += trans[static_cast<std::size_t>(v) * k + l] >= 0;
    }
    std::vector<char> alive(n, 1);
    std::vector<int> work;
    for (int v = 0; v < n; ++v) {
        if (degree[v] <= 1 && v != g.basepoint_index()) work.push_back(v);
    }
    while (!work.empty()) {
        const int v = work.back();
        work.pop_back();
        if (!alive[v]) continue;
        alive[v] = 0;
        for (Letter l = 0; l < k; ++l) {
            const int w = trans[static_cast<std::size_t>(v) * k + l];
            if (w < 0 || w == v || !alive[w]) continue;
            if (--degree[w] <= 1 && w != g.basepoint_index()) work.push_back(w);
        }
    }
    std::vector<int> renumber(n, -1);
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v) {
        if (alive[v]) {
            renumber[v] = static_cast<int>(names.size());
            names.push_back(g.name(v));
        }
    }
    std::vector<int> out(names.size() * k, -1);
    for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        for (Letter l = 0; l < k; ++l) {
            const int w = trans[static_cast<std::size_t>(v) * k + l];
            if (w >= 0 && alive[w]) out[static_cast<std::size_t>(renumber[v]) * k + l] = renumber[w];
        }
    }
    return FiniteGraph(g.rank(), std::move(names), std::move(out), renumber[g.basepoint_index()]).canonical();
}

std::shared_ptr<const EdgeDeletedGraph> delete_generator_lazy(GraphPtr g, const NSBasis& basis, int id) {
    if (id < 0 || id >= static_cast<int>(basis.rank())) {
        throw DomainError("unknown generator id s" + std::to_string(id));
    }
    const NSGenerator& s = basis.generators()[id];
    return std::make_shared<const EdgeDeletedGraph>(std::move(g), basis.ball().names[s.from], s.label);
}

}  // namespace schreier
