#include "oracles.hpp"

#include "schreier/error.hpp"
#include "schreier/graph_lazy.hpp"
#include "schreier/nielsen_schreier.hpp"

#include <doctest.h>

#include <queue>

using namespace schreier;

namespace {

std::vector<int> bfs_distances(const FiniteGraph& g) {
    std::vector<int> d(g.size(), -1);
    std::queue<int> q;
    d[g.basepoint_index()] = 0;
    q.push(g.basepoint_index());
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (Letter l = 0; l < 2 * g.rank(); ++l) {
            const int t = g.at(v, l);
            if (t >= 0 && d[t] < 0) {
                d[t] = d[v] + 1;
                q.push(t);
            }
        }
    }
    return d;
}

std::vector<GenLetter> random_gen_word(std::size_t rank, std::size_t len, Rng& rng) {
    std::vector<GenLetter> xs;
    while (xs.size() < len) {
        const GenLetter x = static_cast<GenLetter>(rng.below(2 * rank));
        if (!xs.empty() && gen_inverse(x) == xs.back()) continue;
        xs.push_back(x);
    }
    return xs;
}

}  // namespace

TEST_CASE("index-2 basis") {
    const FiniteGraph g = fold(Alphabet(2), parse_word_list("aa,ab,bA", Alphabet(2))).graph;
    const NSBasis basis(geodesic_tree(g));
    REQUIRE(basis.rank() == 3);
    CHECK(to_string(basis.sigma(0)) == "bA");
    CHECK(to_string(basis.sigma(2)) == "aa");
    CHECK(to_string(basis.sigma(4)) == "ab");
    CHECK(to_string(basis.sigma(1)) == "aB");
    CHECK(to_string(basis.sigma_minus(1)) == "a");
    CHECK(basis.sigma_middle(1) == 3);
    CHECK(basis.sigma_plus(1).empty());
    CHECK(basis.name(3) == "s1^-1");
    CHECK(basis.parse_name("s2^-1") == 5);
    CHECK_THROWS_AS(basis.parse_name("s7"), DomainError);
    CHECK_FALSE(basis.partial());
}

TEST_CASE("rank formula and basis structure on random finite-index subgroups") {
    Rng rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 2 + trial % 2;
        const int n = 1 + static_cast<int>(rng.below(12));
        const FiniteGraph g = oracle::random_transitive_graph(m, n, rng);
        const NSBasis basis(geodesic_tree(g));
        CHECK(basis.rank() == static_cast<std::size_t>(n * (m - 1) + 1));
        const std::vector<int> dist = bfs_distances(g);
        for (const NSGenerator& s : basis.generators()) {
            CHECK(s.minus.size() == static_cast<std::size_t>(dist[*g.index_of(basis.ball().names[s.from])]));
            CHECK(s.plus.size() == static_cast<std::size_t>(dist[*g.index_of(basis.ball().names[s.to])]));
            CHECK(s.word.size() == s.minus.size() + 1 + s.plus.size());
            const auto end = oracle::walk(g, {s.word.letters().begin(), s.word.letters().end()});
            CHECK(end == std::optional<int>(g.basepoint_index()));
        }
        // the basis generates the subgroup: folding it gives back the graph
        std::vector<ReducedWord> words;
        for (const NSGenerator& s : basis.generators()) words.push_back(s.word);
        CHECK(fold(Alphabet(m), words).graph.canonical_form() == g.canonical_form());
    }
}

TEST_CASE("rewrite inverts expansion") {
    Rng rng(202);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + trial % 2;
        const FiniteGraph g = oracle::random_transitive_graph(m, 1 + static_cast<int>(rng.below(8)), rng);
        const NSBasis basis(geodesic_tree(g));
        for (int k = 0; k < 20; ++k) {
            const auto xs = random_gen_word(basis.rank(), rng.below(7), rng);
            const ReducedWord w = expand_from_basis(basis, xs);
            CHECK(w.size() >= xs.size());
            CHECK(oracle::walk(g, {w.letters().begin(), w.letters().end()}) ==
                  std::optional<int>(g.basepoint_index()));
            CHECK(rewrite_to_basis(basis, w) == xs);
        }
    }
}

TEST_CASE("expansion keeps every middle letter") {
    const FiniteGraph g = fold(Alphabet(2), parse_word_list("aa,ab,bA", Alphabet(2))).graph;
    const NSBasis basis(geodesic_tree(g));
    CHECK_THROWS_AS(require_reduced(std::vector<GenLetter>{2, 3}), DomainError);
    CHECK(to_string(expand_from_basis(basis, std::vector<GenLetter>{2, 4})) == "aaab");
    CHECK(to_string(basis.junction(2, 1)) == "a");
    CHECK(format_gen_word(basis, parse_gen_word(basis, "s0 s1^-1")) == "s0 s1^-1");
}

TEST_CASE("non-members are reported") {
    const FiniteGraph g = fold(Alphabet(2), parse_word_list("a", Alphabet(2))).graph;
    const NSBasis basis(geodesic_tree(g));
    CHECK(basis.rank() == 1);
    CHECK(rewrite_to_basis(basis, parse_word("AAA", Alphabet(2)).word) == std::vector<GenLetter>{1, 1, 1});
    CHECK_THROWS_AS(rewrite_to_basis(basis, parse_word("ab", Alphabet(2)).word), MembershipError);
}

TEST_CASE("deleting a basis generator") {
    const FiniteGraph g = fold(Alphabet(2), parse_word_list("aa,ab,bA", Alphabet(2))).graph;
    const NSBasis basis(geodesic_tree(g));
    for (int id = 0; id < 3; ++id) {
        std::vector<ReducedWord> rest;
        for (const NSGenerator& s : basis.generators()) {
            if (s.id != id) rest.push_back(s.word);
        }
        const FiniteGraph cut = delete_generator_graph(g, basis, id);
        CHECK(cut.canonical_form() == fold(Alphabet(2), rest).graph.canonical_form());
    }
    CHECK_THROWS_AS(delete_generator_graph(g, basis, 3), DomainError);
}

TEST_CASE("partial basis of a lazy graph") {
    const GraphPtr g = complete_with_branches(fold(Alphabet(2), parse_word_list("abAB", Alphabet(2))).graph);
    const NSBasis basis(geodesic_tree(*g, 6));
    CHECK(basis.rank() == 1);
    CHECK(to_string(basis.sigma(0)) == "baBA");
}
