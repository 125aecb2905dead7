#pragma once

// Shared test utilities: seeded random generators for graphs, trees and
// mass vectors, plus small independent oracles (exhaustive path search,
// Kirchhoff tree counting) used to validate the fast implementations.

#include <kantor/kantor.hpp>

#include <random>
#include <set>
#include <vector>

namespace testutil {

using namespace kantor;

inline Rational random_rational(std::mt19937& rng, int max_num = 12, int max_den = 8) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    return make_rational(num(rng), den(rng));
}

inline Rational random_positive_rational(std::mt19937& rng, int max_num = 9, int max_den = 6) {
    std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
    return make_rational(num(rng), den(rng));
}

// Random mass moves between random vertices: always sums to zero.
inline ZeroMassVector random_zero_mass(std::mt19937& rng, int n) {
    std::vector<Rational> v(n, Rational(0));
    std::uniform_int_distribution<int> vert(0, n - 1);
    for (int k = 0; k < 2 * n; ++k) {
        int a = vert(rng), b = vert(rng);
        Rational m = random_positive_rational(rng);
        v[a] += m;
        v[b] -= m;
    }
    return ZeroMassVector(std::move(v));
}

inline ProbabilityFunction random_probability(std::mt19937& rng, int n, int max_num = 9) {
    std::uniform_int_distribution<int> num(1, max_num);
    std::vector<long> raw(n);
    long total = 0;
    for (long& r : raw) total += (r = num(rng));
    std::vector<Rational> mass(n);
    for (int i = 0; i < n; ++i) mass[i] = make_rational(raw[i], total);
    return ProbabilityFunction(std::move(mass));
}

// Random tree on n vertices: each vertex attaches to a random earlier one.
inline WeightedGraph random_tree(std::mt19937& rng, int n, bool unit_weights = false) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> anchor(0, v - 1);
        edges.push_back(
            {anchor(rng), v, unit_weights ? Rational(1) : random_positive_rational(rng)});
    }
    return WeightedGraph::from_indexed(n, std::move(edges));
}

// Random connected graph: a random tree plus extra distinct edges up to m.
inline WeightedGraph random_connected_graph(std::mt19937& rng, int n, int m,
                                            bool unit_weights = false) {
    std::vector<Edge> edges;
    std::set<std::pair<int, int>> used;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> anchor(0, v - 1);
        int a = anchor(rng);
        used.insert({a, v});
        edges.push_back({a, v, unit_weights ? Rational(1) : random_positive_rational(rng)});
    }
    std::uniform_int_distribution<int> vert(0, n - 1);
    for (int attempt = 0; attempt < 4 * m && static_cast<int>(edges.size()) < m; ++attempt) {
        int a = vert(rng), b = vert(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        if (!used.insert({a, b}).second) continue;
        edges.push_back({a, b, unit_weights ? Rational(1) : random_positive_rational(rng)});
    }
    return WeightedGraph::from_indexed(n, std::move(edges));
}

inline WeightedGraph cycle_graph(int n, std::vector<Rational> weights = {}) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n, weights.empty() ? Rational(1) : weights[i]});
    return WeightedGraph::from_indexed(n, std::move(edges));
}

inline WeightedGraph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, Rational(1)});
    return WeightedGraph::from_indexed(n, std::move(edges));
}

// Exhaustive shortest path: tries every simple path. Exponential, only for
// cross-checking Dijkstra on tiny graphs.
inline Rational brute_shortest_path(const WeightedGraph& g, int from, int to) {
    std::vector<char> used(g.vertex_count(), 0);
    Rational best = 0;
    bool found = false;
    auto dfs = [&](auto&& self, int x, Rational cost) -> void {
        if (x == to) {
            if (!found || cost < best) best = cost, found = true;
            return;
        }
        used[x] = 1;
        for (auto [y, e] : g.neighbors(x))
            if (!used[y]) self(self, y, cost + g.edge(e).w);
        used[x] = 0;
    };
    dfs(dfs, from, Rational(0));
    return best;
}

// Exact spanning-tree count through the matrix-tree determinant; fully
// independent of the enumeration code path.
inline unsigned long long kirchhoff_count(const WeightedGraph& g) {
    const int n = g.vertex_count();
    if (n == 1) return 1;
    std::vector<std::vector<Rational>> lap(n - 1, std::vector<Rational>(n - 1, Rational(0)));
    for (const Edge& e : g.edges()) {
        if (e.u > 0) lap[e.u - 1][e.u - 1] += 1;
        if (e.v > 0) lap[e.v - 1][e.v - 1] += 1;
        if (e.u > 0 && e.v > 0) {
            lap[e.u - 1][e.v - 1] -= 1;
            lap[e.v - 1][e.u - 1] -= 1;
        }
    }
    Rational det = 1;
    for (int c = 0; c < n - 1; ++c) {
        int pivot = -1;
        for (int r = c; r < n - 1; ++r)
            if (sgn(lap[r][c]) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != c) {
            std::swap(lap[pivot], lap[c]);
            det = -det;
        }
        det *= lap[c][c];
        for (int r = c + 1; r < n - 1; ++r) {
            Rational f = lap[r][c] / lap[c][c];
            for (int cc = c; cc < n - 1; ++cc) lap[r][cc] -= f * lap[c][cc];
        }
    }
    mpz_class num = det.get_num();  // det of an integer matrix: denominator 1
    return num.get_ui();
}

// Is the support of the plan (rows and columns as a bipartite graph) free
// of cycles? Vertices of the coupling polytope are exactly such plans.
inline bool has_forest_support(const Coupling& plan) {
    DisjointSets dsu(2 * plan.size());
    for (const CouplingEntry& e : plan.entries())
        if (!dsu.unite(e.x, plan.size() + e.y)) return false;
    return true;
}

}  // namespace testutil
