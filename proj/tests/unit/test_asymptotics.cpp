#include "oracles.hpp"

#include "schreier/asymptotics.hpp"
#include "schreier/error.hpp"
#include "schreier/families.hpp"
#include "schreier/graph_lazy.hpp"

#include <doctest.h>

#include <cmath>

using namespace schreier;

namespace {

FiniteGraph folded(const char* text, int m = 2) { return fold(Alphabet(m), parse_word_list(text, Alphabet(m))).graph; }

/// Spectral radius of the non-backtracking matrix of the core, from a
/// dense matrix and plain power iteration on B + I.
double dense_hashimoto_radius(const FiniteGraph& g) {
    const CoreResult c = core(g);
    if (!c.core) return 0.0;
    const FiniteGraph& k = *c.core;
    const int m = k.rank();
    std::vector<std::pair<int, Letter>> edges;
    for (int v = 0; v < k.size(); ++v) {
        for (Letter l = 0; l < 2 * m; ++l) {
            if (k.at(v, l) >= 0) edges.emplace_back(v, l);
        }
    }
    const std::size_t n = edges.size();
    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const int head = k.at(edges[i].first, edges[i].second);
        for (std::size_t j = 0; j < n; ++j) {
            if (edges[j].first == head && edges[j].second != (edges[i].second ^ 1)) b[i][j] = 1.0;
        }
        b[i][i] += 1.0;
    }
    std::vector<double> x(n, 1.0), y(n);
    double ratio = 0.0;
    for (int it = 0; it < 20000; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += b[i][j] * x[j];
            y[i] = s;
        }
        double top = 0.0;
        for (double v : y) top = std::max(top, v);
        ratio = top / *std::max_element(x.begin(), x.end());
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / top;
    }
    return ratio - 1.0;
}

}  // namespace

TEST_CASE("cogrowth dynamic programming matches enumeration") {
    Rng rng(31);
    std::vector<FiniteGraph> graphs;
    for (const char* gens : {"a", "aa,ab,bA", "abAB", "baB", "aab,bAAb", ""}) graphs.push_back(folded(gens));
    for (int i = 0; i < 6; ++i) graphs.push_back(oracle::random_transitive_graph(2, 1 + static_cast<int>(rng.below(6)), rng));
    graphs.push_back(folded("ab,bc", 3));
    for (const FiniteGraph& g : graphs) {
        const int depth = g.rank() == 2 ? 10 : 8;
        CHECK(cogrowth_counts(g, depth) == oracle::brute_cogrowth(g, depth));
        // the completed lazy graph gives the same counts
        CHECK(cogrowth_counts(*complete_with_branches(g), depth) == oracle::brute_cogrowth(g, depth));
    }
}

TEST_CASE("sphere tables") {
    SUBCASE("cyclic subgroup: a_n = 1/2") {
        const SphereTable t = sphere_table(*complete_with_branches(folded("a")), 12);
        CHECK(t.routes_agree);
        CHECK(t.monotone);
        CHECK(t.recurrence_holds);
        for (std::size_t n = 1; n < t.rows.size(); ++n) CHECK(t.rows[n].a_ratio == MeasureValue(1, 2));
        CHECK(t.rows[3].sphere == 18);
    }
    SUBCASE("index two: a_n vanishes from n = 2") {
        const SphereTable t = sphere_table(folded("aa,ab,bA"), 6);
        CHECK(t.rows[1].a_ratio == MeasureValue(1, 4));
        CHECK(t.rows[2].a_ratio == 0);
        CHECK(t.mu_delta_upper() == 0);
        CHECK(t.routes_agree);
    }
    SUBCASE("trivial subgroup: the Cayley tree") {
        const SphereTable t = sphere_table(folded(""), 8);
        for (const SphereRow& r : t.rows) {
            CHECK(r.a_ratio == 1);
            CHECK(r.sphere == oracle::words_of_length(2, r.n));
        }
    }
    SUBCASE("routes agree on random incomplete graphs") {
        Rng rng(8);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<ReducedWord> gens;
            for (int k = 0; k < 2; ++k) gens.push_back(ReducedWord::from_reduced(oracle::random_reduced(2, 1 + rng.below(5), rng)));
            const FiniteGraph g = fold(Alphabet(2), gens).graph;
            const SphereTable t = sphere_table(g, 10);
            CHECK(t.routes_agree);
            CHECK(t.monotone);
        }
    }
    SUBCASE("lazy graphs need enough depth") {
        const GraphPtr lattice = std::make_shared<CommutatorGraph>(2);
        const Ball ball = explore(*lattice, 3);
        CHECK_THROWS_AS(sphere_profile(ball, 6), DepthError);
    }
}

TEST_CASE("non-backtracking spectral radius") {
    const CogrowthEstimate idx2 = vH_estimate(folded("aa,ab,bA"));
    CHECK(idx2.certified);
    CHECK(std::abs(idx2.value - 3.0) < 1e-9);
    CHECK(idx2.lower <= 3.0 + 1e-9);
    CHECK(idx2.upper >= 3.0 - 1e-9);
    CHECK(std::abs(vH_estimate(folded("a")).value - 1.0) < 1e-9);
    CHECK(std::abs(vH_estimate(folded("abAB")).value - 1.0) < 1e-9);
    CHECK(vH_estimate(folded("")).degenerate);

    Rng rng(12);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<ReducedWord> gens;
        for (int k = 0; k < 3; ++k) gens.push_back(ReducedWord::from_reduced(oracle::random_reduced(2, 1 + rng.below(5), rng)));
        const FiniteGraph g = fold(Alphabet(2), gens).graph;
        const CogrowthEstimate e = vH_estimate(g);
        if (e.degenerate) continue;
        const double oracle_value = dense_hashimoto_radius(g);
        CHECK(e.lower <= oracle_value + 1e-6);
        CHECK(e.upper >= oracle_value - 1e-6);
        CHECK(std::abs(e.value - oracle_value) < 1e-6);
    }
}

TEST_CASE("spectral radius of the random walk") {
    CHECK(std::abs(rho_from_vH(1.0, 2) - std::sqrt(3.0) / 2.0) < 1e-12);
    CHECK(std::abs(rho_from_vH(3.0, 2) - 1.0) < 1e-12);
    CHECK(std::abs(rho_from_vH(std::sqrt(3.0), 2) - std::sqrt(3.0) / 2.0) < 1e-12);
    CHECK_THROWS_AS(rho_from_vH(0.5, 2), DomainError);
    CHECK_THROWS_AS(rho_from_vH(3.5, 2), DomainError);

    const auto p = rho_direct(*complete_with_branches(folded("aa,ab,bA")), 4);
    // index 2: the walk is at the basepoint after 2n steps iff 2n is even
    for (const ReturnProbability& r : p) CHECK(r.probability == MeasureValue(1, 1));
    const auto tree = rho_direct(*complete_with_branches(folded("")), 3);
    // returns on the 4-regular tree: 1/4, 7/64 (closed walks 4, 28 over 4^2, 4^4)
    CHECK(tree[0].probability == MeasureValue(1, 4));
    CHECK(tree[1].probability == MeasureValue(7, 64));
}

TEST_CASE("poincare partial sums") {
    const std::vector<BigInt> c = cogrowth_counts(folded("a"), 6);
    // c_0 = 1, c_n = 2 for n >= 1
    MeasureValue expect = 1;
    for (int n = 1; n <= 6; ++n) expect += MeasureValue(2) * power(3, -n);
    CHECK(poincare_partial(c, 2, 6) == expect);
}

TEST_CASE("classification certificates") {
    const auto cert = [](const Verdict& v) { return v.ledger.empty() ? std::string() : v.ledger.front().certificate; };
    const FiniteGraph idx2 = folded("aa,ab,bA");
    const Verdict v1 = classify(idx2, facts_of(idx2), 8);
    CHECK(v1.classification == Classification::conservative_ergodic);
    CHECK(v1.certified);
    CHECK(cert(v1) == "hopf_alternative_finite_index");

    const FiniteGraph cyc = folded("a");
    const Verdict v2 = classify(cyc, facts_of(cyc), 8);
    CHECK(v2.classification == Classification::completely_dissipative);
    CHECK(cert(v2) == "hopf_alternative_infinite_index");
    CHECK(v2.a_depth == std::optional<MeasureValue>(MeasureValue(1, 2)));

    SubgroupFacts unknown;
    const Verdict v3 = classify(*complete_with_branches(cyc), unknown, 8);
    CHECK_FALSE(v3.certified);
    CHECK(v3.classification == Classification::empirical);
}
