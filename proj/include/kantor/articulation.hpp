#pragma once

// Articulation (cut) vertices and the decomposition of a graph into the
// pieces that share one. Norm computations split along these: a piece's
// mass defect is parked on the shared vertex and the pieces are solved
// independently.

#include <vector>

#include "graph.hpp"

namespace kantor {

// Sorted list of articulation vertices (lowlink DFS).
inline std::vector<int> articulation_vertices(const WeightedGraph& g) {
    const int n = g.vertex_count();
    std::vector<int> tin(n, -1), low(n, 0);
    std::vector<char> cut(n, 0);
    int clock = 0;

    auto dfs = [&](auto&& self, int x, int from_edge) -> void {
        tin[x] = low[x] = clock++;
        int children = 0;
        for (auto [y, e] : g.neighbors(x)) {
            if (e == from_edge) continue;
            if (tin[y] >= 0) {
                low[x] = std::min(low[x], tin[y]);
            } else {
                self(self, y, e);
                low[x] = std::min(low[x], low[y]);
                if (low[y] >= tin[x] && from_edge >= 0) cut[x] = 1;
                ++children;
            }
        }
        if (from_edge < 0 && children > 1) cut[x] = 1;
    };
    dfs(dfs, 0, -1);

    std::vector<int> out;
    for (int v = 0; v < n; ++v)
        if (cut[v]) out.push_back(v);
    return out;
}

struct GraphPiece {
    WeightedGraph graph;
    std::vector<int> original_vertex;  // piece index -> index in the parent graph
    int anchor;                        // local index of the shared vertex
};

// Splits g at the articulation vertex x0 into the connected pieces of
// g - x0, each re-attached to x0. Piece vertex order follows the parent
// graph's indices; pieces are ordered by their smallest non-anchor vertex.
inline std::vector<GraphPiece> articulation_split(const WeightedGraph& g, int x0) {
    const int n = g.vertex_count();
    if (x0 < 0 || x0 >= n) throw ValidationError("split vertex out of range");

    std::vector<int> component(n, -1);
    int parts = 0;
    for (int s = 0; s < n; ++s) {
        if (s == x0 || component[s] >= 0) continue;
        std::vector<int> stack = {s};
        component[s] = parts;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [y, e] : g.neighbors(x))
                if (y != x0 && component[y] < 0) {
                    component[y] = parts;
                    stack.push_back(y);
                }
        }
        ++parts;
    }
    if (parts < 2)
        throw ValidationError("vertex '" + g.label(x0) + "' is not an articulation vertex");

    std::vector<GraphPiece> pieces;
    pieces.reserve(parts);
    for (int p = 0; p < parts; ++p) {
        std::vector<int> vertices;
        for (int v = 0; v < n; ++v)
            if (v == x0 || component[v] == p) vertices.push_back(v);
        GraphPiece piece{g.induced_subgraph(vertices), vertices, 0};
        for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
            if (vertices[i] == x0) piece.anchor = i;
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

}  // namespace kantor
