#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace kantor;
using namespace testutil;

TEST_CASE("graph construction enforces the contract") {
    CHECK_THROWS_AS(WeightedGraph::from_indexed(2, {{0, 0, Rational(1)}}), ValidationError);
    CHECK_THROWS_AS(
        WeightedGraph::from_indexed(2, {{0, 1, Rational(1)}, {1, 0, Rational(2)}}),
        ValidationError);  // parallel, regardless of orientation
    CHECK_THROWS_AS(WeightedGraph::from_indexed(2, {{0, 1, Rational(0)}}), ValidationError);
    CHECK_THROWS_AS(WeightedGraph::from_indexed(2, {{0, 1, Rational(-1)}}), ValidationError);
    CHECK_THROWS_AS(WeightedGraph::from_indexed(4, {{0, 1, Rational(1)}, {2, 3, Rational(1)}}),
                    ValidationError);  // disconnected
    CHECK_THROWS_AS(WeightedGraph({}, {}), ValidationError);
    CHECK_THROWS_AS(WeightedGraph({"a", "a"}, {{0, 1, Rational(1)}}), ValidationError);
}

TEST_CASE("labels get dense indices by first appearance") {
    GraphBuilder b;
    b.add_edge("left", "mid", make_rational(1, 2));
    b.add_edge("mid", "right", Rational(2));
    WeightedGraph g = std::move(b).build();
    REQUIRE(g.vertex_count() == 3);
    CHECK(g.label(0) == "left");
    CHECK(g.label(1) == "mid");
    CHECK(g.label(2) == "right");
    CHECK(g.find_vertex("right") == 2);
    CHECK_FALSE(g.find_vertex("nowhere").has_value());
    CHECK(g.degree(1) == 2);
    CHECK(g.edge_between(0, 1).has_value());
    CHECK_FALSE(g.edge_between(0, 2).has_value());
}

TEST_CASE("shortest paths match exhaustive search") {
    std::mt19937 rng(2024);
    for (int round = 0; round < 25; ++round) {
        WeightedGraph g = random_connected_graph(rng, 6, 9);
        DistanceMatrix d = all_pairs_shortest_paths(g);
        REQUIRE(validate_metric(d).ok());
        for (int x = 0; x < 6; ++x)
            for (int y = 0; y < 6; ++y)
                CHECK(d(x, y) == brute_shortest_path(g, x, y));
    }
}

TEST_CASE("an overweight edge is not close") {
    // x-y directly at 5, but x-z-y costs 2+2
    WeightedGraph g = WeightedGraph(
        {"x", "y", "z"}, {{0, 1, Rational(5)}, {0, 2, Rational(2)}, {2, 1, Rational(2)}});
    DistanceMatrix d = all_pairs_shortest_paths(g);
    CHECK(d(0, 1) == 4);
    CHECK_FALSE(is_close(g, d, 0, 1));
    CHECK(is_close(g, d, 0, 2));
    CHECK(is_close(g, d, 2, 1));
    CHECK_FALSE(is_close(g, d, 0, 0));
    CHECK(close_edges(g, d) == std::vector<int>{1, 2});
}

TEST_CASE("geodesics take the lexicographically smallest route") {
    WeightedGraph g = cycle_graph(4);  // ties: 1->2->3 and 1->4->3
    DistanceMatrix d = all_pairs_shortest_paths(g);
    CHECK(geodesic(g, d, 0, 2) == std::vector<int>{0, 1, 2});
    CHECK(geodesic(g, d, 2, 0) == std::vector<int>{2, 1, 0});
    CHECK(geodesic(g, d, 3, 3) == std::vector<int>{3});
    // consecutive vertices of a geodesic are always close
    WeightedGraph h = WeightedGraph(
        {"x", "y", "z"}, {{0, 1, Rational(5)}, {0, 2, Rational(2)}, {2, 1, Rational(2)}});
    DistanceMatrix dh = all_pairs_shortest_paths(h);
    CHECK(geodesic(h, dh, 0, 1) == std::vector<int>{0, 2, 1});
}

TEST_CASE("metric validation pinpoints the first broken axiom") {
    DistanceMatrix ok(2);
    ok(0, 1) = ok(1, 0) = 3;
    CHECK(validate_metric(ok).ok());

    DistanceMatrix diag(2);
    diag(0, 0) = 1;
    diag(0, 1) = diag(1, 0) = 3;
    CHECK(validate_metric(diag).violated == MetricReport::Axiom::diagonal);

    DistanceMatrix asym(2);
    asym(0, 1) = 3;
    asym(1, 0) = 2;
    CHECK(validate_metric(asym).violated == MetricReport::Axiom::symmetry);

    DistanceMatrix zero(2);
    CHECK(validate_metric(zero).violated == MetricReport::Axiom::positivity);

    DistanceMatrix tri(3);
    tri(0, 1) = tri(1, 0) = 1;
    tri(1, 2) = tri(2, 1) = 1;
    tri(0, 2) = tri(2, 0) = 5;  // 5 > 1 + 1
    MetricReport r = validate_metric(tri);
    CHECK(r.violated == MetricReport::Axiom::triangle);
    CHECK(r.x == 0);
    CHECK(r.y == 1);
    CHECK(r.z == 2);
    CHECK(r.describe() == "d(0,2) > d(0,1) + d(1,2)");
}

TEST_CASE("graph shape predicates") {
    std::mt19937 rng(7);
    CHECK(random_tree(rng, 5).is_tree());
    CHECK(cycle_graph(5).is_cycle());
    CHECK_FALSE(cycle_graph(5).is_tree());
    CHECK_FALSE(complete_graph(4).is_cycle());
    CHECK(complete_graph(3).is_cycle());  // a triangle is both complete and a cycle
}
