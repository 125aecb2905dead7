#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace kantor;
using namespace testutil;

namespace {

bool edges_form_spanning_tree(const WeightedGraph& g, const std::vector<int>& edges) {
    if (static_cast<int>(edges.size()) != g.vertex_count() - 1) return false;
    DisjointSets dsu(g.vertex_count());
    for (int e : edges)
        if (!dsu.unite(g.edge(e).u, g.edge(e).v)) return false;
    return true;
}

}  // namespace

TEST_CASE("enumeration count matches the matrix-tree determinant") {
    CHECK(count_spanning_trees(complete_graph(4)) == 16);  // n^(n-2)
    CHECK(count_spanning_trees(complete_graph(5)) == 125);
    CHECK(count_spanning_trees(cycle_graph(7)) == 7);
    std::mt19937 rng(77);
    for (int round = 0; round < 30; ++round) {
        WeightedGraph g = random_connected_graph(rng, 7, 12);
        CHECK(count_spanning_trees(g) == kirchhoff_count(g));
    }
}

TEST_CASE("every enumerated edge set is a distinct spanning tree") {
    std::mt19937 rng(78);
    for (int round = 0; round < 10; ++round) {
        WeightedGraph g = random_connected_graph(rng, 6, 10);
        auto trees = all_spanning_trees(g);
        std::set<std::vector<int>> unique(trees.begin(), trees.end());
        CHECK(unique.size() == trees.size());
        for (const auto& t : trees) CHECK(edges_form_spanning_tree(g, t));
    }
}

TEST_CASE("enumeration order is deterministic, include-first") {
    auto trees = all_spanning_trees(cycle_graph(4));
    REQUIRE(trees.size() == 4);
    CHECK(trees[0] == std::vector<int>{0, 1, 2});
    // remaining trees drop exactly one earlier edge each
    CHECK(trees[1] == std::vector<int>{0, 1, 3});
    CHECK(trees[2] == std::vector<int>{0, 2, 3});
    CHECK(trees[3] == std::vector<int>{1, 2, 3});
}

TEST_CASE("the limit trips a capacity error carrying the count") {
    try {
        all_spanning_trees(cycle_graph(4), 3);
        FAIL("expected CapacityError");
    } catch (const CapacityError& e) {
        CHECK(e.reached == 4);
    }
    CHECK_NOTHROW(all_spanning_trees(cycle_graph(4), 4));
}

TEST_CASE("forest extension is greedy in input order") {
    WeightedGraph g = cycle_graph(4);
    CHECK(extend_forest_to_spanning_tree(g, {}) == std::vector<int>{0, 1, 2});
    CHECK(extend_forest_to_spanning_tree(g, {3}) == std::vector<int>{0, 1, 3});
    CHECK(extend_forest_to_spanning_tree(g, {1, 3}) == std::vector<int>{0, 1, 3});

    WeightedGraph k4 = complete_graph(4);
    // edge ids: 0:{1,2} 1:{1,3} 2:{1,4} 3:{2,3} 4:{2,4} 5:{3,4}
    CHECK(extend_forest_to_spanning_tree(k4, {5}) == std::vector<int>{0, 1, 5});
    CHECK_THROWS_AS(extend_forest_to_spanning_tree(k4, {0, 1, 3}), ValidationError);
    CHECK_THROWS_AS(extend_forest_to_spanning_tree(k4, {0, 0}), ValidationError);
    CHECK_THROWS_AS(extend_forest_to_spanning_tree(k4, {9}), ValidationError);
}

TEST_CASE("articulation vertices and split pieces") {
    // two triangles sharing vertex 2 (index 2): bowtie
    WeightedGraph bowtie = WeightedGraph::from_indexed(
        5, {{0, 1, Rational(1)}, {0, 2, Rational(1)}, {1, 2, Rational(1)},
            {2, 3, Rational(1)}, {2, 4, Rational(1)}, {3, 4, Rational(1)}});
    CHECK(articulation_vertices(bowtie) == std::vector<int>{2});
    auto pieces = articulation_split(bowtie, 2);
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].original_vertex == std::vector<int>{0, 1, 2});
    CHECK(pieces[0].anchor == 2);
    CHECK(pieces[0].graph.edge_count() == 3);
    CHECK(pieces[1].original_vertex == std::vector<int>{2, 3, 4});
    CHECK(pieces[1].anchor == 0);
    CHECK(pieces[1].graph.edge_count() == 3);

    CHECK_THROWS_AS(articulation_split(bowtie, 0), ValidationError);
    CHECK(articulation_vertices(complete_graph(4)).empty());
    CHECK(articulation_vertices(cycle_graph(5)).empty());

    // every internal vertex of a path cuts it
    WeightedGraph path = WeightedGraph::from_indexed(
        4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)}});
    CHECK(articulation_vertices(path) == std::vector<int>{1, 2});
}
