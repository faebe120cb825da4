#include "oracles.hpp"

#include "schreier/asymptotics.hpp"
#include "schreier/error.hpp"
#include "schreier/expression.hpp"
#include "schreier/families.hpp"
#include "schreier/nielsen_schreier.hpp"

#include <doctest.h>

using namespace schreier;

namespace {

/// Every explored vertex: letters act as a partial bijection (l then l^-1
/// returns), and known distances match breadth-first depth.
void check_consistent(const LabeledGraph& g, int radius) {
    const Ball ball = explore(g, radius);
    for (int v = 0; v < ball.size(); ++v) {
        const std::string& name = ball.names[v];
        for (Letter l = 0; l < 2 * g.rank(); ++l) {
            const auto t = g.target(name, l);
            REQUIRE(t.has_value());
            CHECK(g.target(*t, inverse(l)) == std::optional<std::string>(name));
        }
        const auto d = g.distance_from_basepoint(name);
        if (d) CHECK(*d == ball.depth[v]);
    }
}

BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("expressions") {
    CHECK(Expression::parse("n^2")(5) == 25);
    CHECK(Expression::parse("2^n + 1")(10) == 1025);
    CHECK(Expression::parse("2^3^2")(0) == 512);
    CHECK(Expression::parse("-n^2")(3) == -9);
    CHECK(Expression::parse("(n+1)*(n-1)")(6) == 35);
    CHECK(Expression::parse("3 - 2 - 1")(0) == 0);
    CHECK(Expression::parse("(-1)^n")(7) == -1);
    CHECK(Expression::parse("n")(123) == 123);
    CHECK_THROWS_AS(Expression::parse("n+"), ParseError);
    CHECK_THROWS_AS(Expression::parse("x"), ParseError);
    CHECK_THROWS_AS(Expression::parse("(n"), ParseError);
    CHECK_THROWS_AS(Expression::parse("2^70")(0), DomainError);
    CHECK_THROWS_AS(Expression::parse("n*n*n*n*n")(100000), DomainError);
    try {
        Expression::parse("n + * 2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("family parameters") {
    const FamilyParams p = parse_family_params("m=3; d=n^2");
    CHECK(p.at("m") == "3");
    CHECK(p.at("d") == "n^2");
    CHECK(parse_family_params("").empty());
    CHECK_THROWS_AS(parse_family_params("m"), DomainError);
    CHECK_THROWS_AS(instantiate("nosuch"), DomainError);
    CHECK_THROWS_AS(instantiate("ladder", {{"d", "n"}}), DomainError);
    CHECK_THROWS_AS(instantiate("maxgrowthcons", {{"d", "5-n"}}), DomainError);
    CHECK_THROWS_AS(instantiate("consdiss", {{"m", "2"}}), DomainError);
    CHECK(family_list().size() >= 11);
}

TEST_CASE("families are well-formed graphs") {
    for (const FamilyInfo& info : family_list()) {
        CAPTURE(info.name);
        const Family f = instantiate(info.name);
        CHECK(f.graph->is_complete());
        check_consistent(*f.graph, 6);
    }
    check_consistent(*instantiate("looped_ray", {{"d", "n^2"}}).graph, 12);
    check_consistent(*instantiate("amendiss", {{"m", "3"}}).graph, 5);
    check_consistent(*instantiate("commutator", {{"m", "3"}}).graph, 4);
}

TEST_CASE("ladder and looped ray structure") {
    const Family ladder = instantiate("ladder");
    const LabeledGraph& g = *ladder.graph;
    CHECK(g.target("o", 1) == std::optional<std::string>("p1"));
    CHECK(g.target("o", 0) == std::optional<std::string>("q1"));
    CHECK(g.target("q2", 2) == std::optional<std::string>("p3"));
    // the spanning tree reaches p<n+1> through the rung, never along rho1
    const NSBasis basis(geodesic_tree(g, 12));
    for (int n = 1; n <= 10; ++n) {
        const int v = basis.ball().index.at("p" + std::to_string(n + 1));
        CHECK(basis.ball().names[basis.ball().parent[v]] == "q" + std::to_string(n));
        CHECK(basis.edge_generator(v, 0) >= 0);
    }
    CHECK(g.core_status("p5") == CoreStatus::in_core);

    const Family looped = instantiate("looped_ray", {{"d", "n+1"}});
    // from r<n>, b walks around a cycle of length 2d_n + 1
    for (int n = 1; n <= 5; ++n) {
        std::string v = "r" + std::to_string(n);
        int len = 0;
        do {
            v = *looped.graph->target(v, 2);
            ++len;
        } while (v != "r" + std::to_string(n));
        CHECK(len == 2 * (n + 1) + 1);
    }
}

TEST_CASE("maxgrowthcons closed-form profile matches exploration") {
    for (const char* d : {"n^2", "n", "2*n+1"}) {
        const Family f = instantiate("maxgrowthcons", {{"d", d}});
        const SphereProfile closed = f.sphere_profile(7);
        const SphereProfile bfs = sphere_profile(explore(*f.graph, 8), 7);
        REQUIRE(closed.size() == bfs.size());
        for (std::size_t n = 0; n < closed.size(); ++n) {
            CHECK(closed[n].first == bfs[n].first);
            CHECK(closed[n].second == bfs[n].second);
        }
    }
}

TEST_CASE("mingrowthdiss schedule") {
    const Family f = instantiate("mingrowthdiss");
    const auto& g = static_cast<const MinGrowthDissGraph&>(*f.graph);
    const auto steps = g.schedule(12);
    REQUIRE(steps.size() == 12);
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const auto& s = steps[k];
        CHECK(static_cast<long>(s.x.size()) == s.depth);
        CHECK(static_cast<long>(s.y.size()) == s.depth);
        CHECK(s.depth == static_cast<long>(k + 1));
        CHECK(s.label != inverse(s.x.back()));
        CHECK(s.label != s.y.back());
    }
    CHECK(g.shadows_hit(2, 500).has_value());
    CHECK(f.graph->core_status("o") == CoreStatus::in_core);
}

TEST_CASE("commutator spheres are l1 spheres of the lattice") {
    for (int m = 2; m <= 3; ++m) {
        const Family f = instantiate("commutator", {{"m", std::to_string(m)}});
        const SphereTable t = sphere_table(*f.graph, 10);
        CHECK(t.routes_agree);
        for (const SphereRow& r : t.rows) {
            BigInt expect = r.n == 0 ? 1 : 0;
            for (long k = 1; k <= m && r.n > 0; ++k) {
                expect += BigInt(1L << k) * binomial(m, k) * binomial(r.n - 1, k - 1);
            }
            CHECK(r.sphere == expect);
        }
    }
}

TEST_CASE("family reports bind claims to evidence") {
    ReportOptions o;
    o.depth = 12;
    o.n_max = 10;
    o.trials = 100;
    o.steps = 300;
    for (const char* name : {"ladder", "looped_ray", "commutator", "even_kernel", "free", "cyclic", "trivial"}) {
        CAPTURE(name);
        const auto rows = expected_vs_computed(instantiate(name), o);
        CHECK_FALSE(rows.empty());
        for (const ReportRow& r : rows) {
            CAPTURE(r.claim);
            CAPTURE(r.evidence);
            CHECK(r.status != ClaimStatus::contradicted);
            CHECK((r.tag == "claimed" || r.tag == "derived"));
        }
    }
}
