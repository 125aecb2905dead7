#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "helpers.hpp"

using namespace kantor;
using namespace testutil;

namespace {

// two graphs glued at one shared vertex (second graph's vertex 0 becomes
// `at` in the first); creates an articulation vertex by construction
WeightedGraph glue_at(const WeightedGraph& a, const WeightedGraph& b, int at) {
    std::vector<Edge> edges = a.edges();
    auto shifted = [&](int v) { return v == 0 ? at : a.vertex_count() + v - 1; };
    for (const Edge& e : b.edges()) edges.push_back({shifted(e.u), shifted(e.v), e.w});
    return WeightedGraph::from_indexed(a.vertex_count() + b.vertex_count() - 1, std::move(edges));
}

}  // namespace

TEST_CASE("square with one diagonal: minimum over the eight spanning trees") {
    WeightedGraph g = WeightedGraph::from_indexed(
        4, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)},
            {3, 0, Rational(1)}, {1, 3, Rational(1)}});
    SpanningTreeEnvelope env(g);
    REQUIRE(env.tree_count() == 8);
    REQUIRE(kirchhoff_count(g) == 8);

    std::mt19937 rng(501);
    for (int round = 0; round < 50; ++round) {
        ZeroMassVector xi = random_zero_mass(rng, 4);
        const auto& x = xi.values();
        using kantor::abs;
        std::vector<Rational> trees = {
            abs(x[0]) + abs(x[2] + x[3]) + abs(x[3]),  // path 0-1-2-3
            abs(x[1] + x[2]) + abs(x[2]) + abs(x[3]),  // path 2-1-0-3
            abs(x[0]) + abs(x[2]) + abs(x[3]),         // star at 1
            abs(x[1]) + abs(x[2]) + abs(x[2] + x[3]),  // path 1-0-3-2
            abs(x[0]) + abs(x[2] + x[3]) + abs(x[2]),  // path 0-1-3-2
            abs(x[1]) + abs(x[1] + x[2]) + abs(x[0]),  // path 1-2-3-0
            abs(x[2]) + abs(x[1] + x[2]) + abs(x[0]),  // path 2-1-3-0
            abs(x[1]) + abs(x[2]) + abs(x[0]),         // star at 3
        };
        Rational expected = *std::min_element(trees.begin(), trees.end());
        CHECK(env.norm(xi).value == expected);
    }

    ZeroMassVector step({Rational(1), Rational(0), Rational(-1), Rational(0)});
    EnvelopeNorm e = envelope_norm(g, step);
    CHECK(e.value == 2);
    CHECK(e.tree_count == 8);
    CHECK(kb_norm(all_pairs_shortest_paths(g), step) == 2);
}

TEST_CASE("a tree is its own envelope") {
    std::mt19937 rng(502);
    for (int round = 0; round < 20; ++round) {
        int n = 2 + round % 9;
        WeightedGraph g = random_tree(rng, n);
        ZeroMassVector xi = random_zero_mass(rng, n);
        EnvelopeNorm e = envelope_norm(g, xi);
        CHECK(e.tree_count == 1);
        CHECK(e.value == tree_norm(root_tree(g, 0), xi).value);
    }
}

TEST_CASE("the attaining spanning tree really attains the value") {
    std::mt19937 rng(503);
    for (int round = 0; round < 20; ++round) {
        int n = 3 + round % 5;
        WeightedGraph g = random_connected_graph(rng, n, n + 2);
        ZeroMassVector xi = random_zero_mass(rng, n);
        EnvelopeNorm e = envelope_norm(g, xi);
        WeightedGraph witness = g.edge_subgraph(e.tree_edges);
        REQUIRE(witness.is_tree());
        CHECK(tree_norm(root_tree(witness, 0), xi).value == e.value);
        // and it is a true minimum: the oracle agrees
        CHECK(kb_norm(all_pairs_shortest_paths(g), xi) == e.value);
    }
}

TEST_CASE("cycle closed form: shift at a mass prefix, drop one edge") {
    std::mt19937 rng(504);
    for (int round = 0; round < 30; ++round) {
        int n = 3 + round % 8;
        std::vector<Rational> w(n);
        for (Rational& q : w) q = random_positive_rational(rng);
        WeightedGraph g = cycle_graph(n, w);
        ZeroMassVector xi = random_zero_mass(rng, n);

        CycleNorm c = cycle_norm(w, xi);
        CHECK(c.value == envelope_norm(g, xi).value);
        CHECK(c.value == kb_norm(all_pairs_shortest_paths(g), xi));

        // the minimizer is one of the prefix sums
        std::vector<Rational> prefix(n);
        Rational run = 0;
        for (int i = 0; i < n; ++i) prefix[i] = (run += xi(i));
        CHECK(std::find(prefix.begin(), prefix.end(), c.minimizer) != prefix.end());

        // evaluating the shift functional at the minimizer gives the value
        Rational phi = 0;
        for (int i = 0; i < n; ++i) phi += w[i] * abs(c.minimizer - prefix[i]);
        CHECK(phi == c.value);

        // dropping the reported edge leaves a spanning tree attaining it
        std::vector<int> keep;
        for (int e = 0; e < n; ++e)
            if (e != c.deleted_edge) keep.push_back(e);
        WeightedGraph path = g.edge_subgraph(keep);
        REQUIRE(path.is_tree());
        CHECK(tree_norm(root_tree(path, 0), xi).value == c.value);
    }
}

TEST_CASE("cycle input validation") {
    std::vector<Rational> unit3(3, Rational(1));
    CHECK_THROWS_AS(cycle_norm({Rational(1), Rational(1)}, ZeroMassVector::zero(2)),
                    ValidationError);
    CHECK_THROWS_AS(cycle_norm(unit3, ZeroMassVector::zero(4)), ValidationError);
    CHECK_THROWS_AS(cycle_norm({Rational(1), Rational(0), Rational(1)}, ZeroMassVector::zero(3)),
                    ValidationError);
    CHECK_NOTHROW(cycle_norm(unit3, ZeroMassVector::zero(3)));
}

TEST_CASE("two triangles sharing a vertex split into independent pieces") {
    WeightedGraph g = WeightedGraph::from_indexed(
        5, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {2, 3, Rational(1)},
            {3, 1, Rational(1)}, {1, 4, Rational(1)}, {4, 0, Rational(1)}});
    REQUIRE(articulation_vertices(g) == std::vector<int>{1});
    SpanningTreeEnvelope env(g);
    REQUIRE(env.tree_count() == 9);

    std::mt19937 rng(505);
    for (int round = 0; round < 30; ++round) {
        ZeroMassVector xi = random_zero_mass(rng, 5);
        const auto& x = xi.values();
        using kantor::abs;
        // each unit triangle moves mass at half the total variation it sees
        Rational expected = (abs(x[0]) + abs(x[4]) + abs(x[0] + x[4])) / 2 +
                            (abs(x[2]) + abs(x[3]) + abs(x[2] + x[3])) / 2;
        CHECK(decomposed_norm(g, xi) == expected);
        CHECK(env.norm(xi).value == expected);
    }

    // decomposing dodges enumeration limits the whole graph would hit
    ZeroMassVector xi = random_zero_mass(rng, 5);
    CHECK_THROWS_AS(envelope_norm(g, xi, 5), CapacityError);
    CHECK(decomposed_norm(g, xi, 5) == decomposed_norm(g, xi));
}

TEST_CASE("decomposition agrees with the envelope on glued random graphs") {
    std::mt19937 rng(506);
    for (int round = 0; round < 12; ++round) {
        int na = 3 + round % 3, nb = 3 + (round / 3) % 3;
        WeightedGraph a = random_connected_graph(rng, na, na + 1);
        WeightedGraph b = random_connected_graph(rng, nb, nb + 1);
        WeightedGraph g = glue_at(a, b, rng() % na);
        REQUIRE_FALSE(articulation_vertices(g).empty());
        ZeroMassVector xi = random_zero_mass(rng, g.vertex_count());
        Rational split = decomposed_norm(g, xi);
        CHECK(split == envelope_norm(g, xi).value);
        CHECK(split == kb_norm(all_pairs_shortest_paths(g), xi));
    }
}

TEST_CASE("enumeration limits surface as capacity errors with the count reached") {
    WeightedGraph g = complete_graph(5);  // 125 spanning trees
    try {
        envelope_norm(g, ZeroMassVector::zero(5), 100);
        FAIL("expected a capacity error");
    } catch (const CapacityError& e) {
        CHECK(e.reached == 101);
    }
}
