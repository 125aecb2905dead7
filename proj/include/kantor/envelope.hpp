#pragma once

// Norms on general graphs. The norm of a zero-mass vector over a graph is
// the minimum of its tree norms over all spanning trees (each tree keeping
// its own edge weights), so enumeration gives an exact algorithm whenever
// the tree count is sane. Cycles collapse to a one-dimensional minimization
// and articulation vertices split the problem into independent pieces.

#include <vector>

#include "articulation.hpp"
#include "graph.hpp"
#include "measure.hpp"
#include "spanning.hpp"

namespace kantor {

// Enumerates the spanning trees of a graph once and answers norm queries
// against all of them. Trees are stored as flat parent arrays in discovery
// order; ties between trees go to the first one enumerated.
class SpanningTreeEnvelope {
public:
    explicit SpanningTreeEnvelope(WeightedGraph g,
                                  unsigned long long limit = default_tree_limit)
        : g_(std::move(g)) {
        const int n = g_.vertex_count();
        std::vector<std::vector<std::pair<int, int>>> adj(n);  // (vertex, edge)
        enumerate_spanning_trees(
            g_,
            [&](const std::vector<int>& edges) {
                for (int v = 0; v < n; ++v) adj[v].clear();
                for (int e : edges) {
                    adj[g_.edge(e).u].push_back({g_.edge(e).v, e});
                    adj[g_.edge(e).v].push_back({g_.edge(e).u, e});
                }
                // BFS from vertex 0: order with parents first
                std::vector<int> order = {0};
                std::vector<int> up_edge(n, -1);
                std::vector<char> seen(n, 0);
                seen[0] = 1;
                for (std::size_t i = 0; i < order.size(); ++i)
                    for (auto [y, e] : adj[order[i]])
                        if (!seen[y]) {
                            seen[y] = 1;
                            up_edge[y] = e;
                            order.push_back(y);
                        }
                order_.insert(order_.end(), order.begin(), order.end());
                up_edge_.insert(up_edge_.end(), up_edge.begin(), up_edge.end());
            },
            limit);
    }

    const WeightedGraph& graph() const { return g_; }

    std::size_t tree_count() const { return order_.size() / g_.vertex_count(); }

    std::vector<int> tree_edges(std::size_t k) const {
        const int n = g_.vertex_count();
        std::vector<int> edges;
        for (int i = 0; i < n; ++i)
            if (up_edge_[k * n + i] >= 0) edges.push_back(up_edge_[k * n + i]);
        std::sort(edges.begin(), edges.end());
        return edges;
    }

    struct Result {
        Rational value;
        std::size_t tree_index;  // first tree attaining the minimum
    };

    Result norm(const ZeroMassVector& xi) const {
        const int n = g_.vertex_count();
        if (xi.size() != n) throw ValidationError("mass vector does not match the graph");
        Result best{Rational(0), 0};
        std::vector<Rational> acc(n);
        for (std::size_t k = 0; k < tree_count(); ++k) {
            const int* order = &order_[k * n];
            const int* up = &up_edge_[k * n];
            for (int i = 0; i < n; ++i) acc[order[i]] = xi(order[i]);
            Rational value = 0;
            for (int i = n - 1; i > 0; --i) {
                int v = order[i];
                const Edge& e = g_.edge(up[v]);
                value += e.w * abs(acc[v]);
                acc[e.u == v ? e.v : e.u] += acc[v];
            }
            if (k == 0 || value < best.value) best = {std::move(value), k};
        }
        return best;
    }

private:
    WeightedGraph g_;
    std::vector<int> order_;    // tree_count x n, BFS order per tree
    std::vector<int> up_edge_;  // tree_count x n, edge to parent (-1 at vertex 0)
};

struct EnvelopeNorm {
    Rational value;
    std::size_t tree_index;
    std::vector<int> tree_edges;  // edges of the attaining spanning tree
    std::size_t tree_count;
};

inline EnvelopeNorm envelope_norm(const WeightedGraph& g, const ZeroMassVector& xi,
                                  unsigned long long limit = default_tree_limit) {
    SpanningTreeEnvelope env(g, limit);
    auto [value, index] = env.norm(xi);
    return {std::move(value), index, env.tree_edges(index), env.tree_count()};
}

struct CycleNorm {
    Rational value;
    Rational minimizer;  // optimal shift, always one of the mass prefix sums
    int deleted_edge;    // index of the cycle edge the optimal tree omits
};

// Closed form on a cycle with vertices 0..n-1 and edge i joining i to
// i+1 mod n. Shifting the amount t across every edge costs
//   Phi(t) = sum_i w_i |t - p_i|,   p_i = xi(0) + ... + xi(i),
// a piecewise linear function minimized at some prefix sum p_j; that j is
// exactly the edge whose removal leaves the best spanning tree.
inline CycleNorm cycle_norm(const std::vector<Rational>& edge_weights, const ZeroMassVector& xi) {
    const int n = xi.size();
    if (n < 3) throw ValidationError("a cycle needs at least three vertices");
    if (static_cast<int>(edge_weights.size()) != n)
        throw ValidationError("cycle needs one weight per edge");
    for (const Rational& w : edge_weights)
        if (sgn(w) <= 0) throw ValidationError("non-positive cycle edge weight");

    std::vector<Rational> prefix(n);
    Rational run = 0;
    for (int i = 0; i < n; ++i) {
        run += xi(i);
        prefix[i] = run;
    }
    CycleNorm best{Rational(0), Rational(0), -1};
    for (int j = 0; j < n; ++j) {
        Rational phi = 0;
        for (int i = 0; i < n; ++i) phi += edge_weights[i] * abs(prefix[j] - prefix[i]);
        if (best.deleted_edge < 0 || phi < best.value) best = {std::move(phi), prefix[j], j};
    }
    return best;
}

// Splits at the lowest-index articulation vertex, parks each piece's
// missing mass on the shared vertex, and recurses; biconnected pieces fall
// through to the spanning-tree envelope. The total is the graph norm.
inline Rational decomposed_norm(const WeightedGraph& g, const ZeroMassVector& xi,
                                unsigned long long limit = default_tree_limit) {
    if (xi.size() != g.vertex_count()) throw ValidationError("mass vector does not match the graph");
    std::vector<int> cuts = articulation_vertices(g);
    if (cuts.empty()) return envelope_norm(g, xi, limit).value;

    Rational total = 0;
    for (const GraphPiece& piece : articulation_split(g, cuts.front())) {
        const int m = piece.graph.vertex_count();
        std::vector<Rational> part(m, Rational(0));
        Rational inside = 0;
        for (int v = 0; v < m; ++v)
            if (v != piece.anchor) {
                part[v] = xi(piece.original_vertex[v]);
                inside += part[v];
            }
        part[piece.anchor] = -inside;
        total += decomposed_norm(piece.graph, ZeroMassVector(std::move(part)), limit);
    }
    return total;
}

}  // namespace kantor
