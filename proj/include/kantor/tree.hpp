#pragma once

// Rooted tree view of a tree-shaped weighted graph: parent pointers, edge
// weights toward the root, children lists, and a breadth-first order whose
// reverse visits children before parents. The partial order puts the root
// at the bottom: x precedes y when x lies on the root-to-y path.

#include <string>
#include <vector>

#include "graph.hpp"

namespace kantor {

struct RootedTree {
    int n = 0;
    int root = 0;
    std::vector<int> parent;       // -1 at the root
    std::vector<int> parent_edge;  // edge index in the source graph, -1 at the root
    std::vector<Rational> up_w;    // weight of the edge to the parent, 0 at the root
    std::vector<std::vector<int>> children;  // each sorted ascending
    std::vector<int> order;                  // BFS from the root: parents first
    std::vector<int> tin, tout;              // DFS intervals, descendants nest inside
    std::vector<std::string> labels;

    bool is_root(int x) const { return x == root; }

    // x precedes y (x is y or an ancestor of y)?
    bool precedes(int x, int y) const { return tin[x] <= tin[y] && tin[y] < tout[x]; }
};

// Roots a tree-shaped graph at `root` (default: vertex 0). A connected
// graph is a tree exactly when it has n-1 edges; otherwise some cycle
// exists and the error message names one.
inline RootedTree root_tree(const WeightedGraph& g, int root = 0) {
    const int n = g.vertex_count();
    if (root < 0 || root >= n) throw ValidationError("root index out of range");
    if (!g.is_tree()) {
        // Name a concrete cycle in the error: grow a BFS tree, take any
        // leftover edge (u,v), and join both endpoints' ancestor chains at
        // their lowest common ancestor.
        std::vector<int> parent(n, -1), depth(n, -1);
        std::vector<char> tree_edge(g.edge_count(), 0);
        std::vector<int> queue = {0};
        depth[0] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int x = queue[i];
            for (auto [y, e] : g.neighbors(x))
                if (depth[y] < 0) {
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    tree_edge[e] = 1;
                    queue.push_back(y);
                }
        }
        int u = -1, v = -1;
        for (int e = 0; e < g.edge_count(); ++e)
            if (!tree_edge[e]) {
                u = g.edge(e).u, v = g.edge(e).v;
                break;
            }
        std::vector<int> up_u = {u}, up_v = {v};
        while (depth[up_u.back()] > depth[up_v.back()]) up_u.push_back(parent[up_u.back()]);
        while (depth[up_v.back()] > depth[up_u.back()]) up_v.push_back(parent[up_v.back()]);
        while (up_u.back() != up_v.back()) {
            up_u.push_back(parent[up_u.back()]);
            up_v.push_back(parent[up_v.back()]);
        }
        std::string cycle;
        for (int x : up_u) cycle += (cycle.empty() ? "" : " ") + g.label(x);
        for (auto it = std::next(up_v.rbegin()); it != up_v.rend(); ++it)
            cycle += " " + g.label(*it);
        throw ValidationError("graph is not a tree (cycle: " + cycle + ")");
    }

    RootedTree t;
    t.n = n;
    t.root = root;
    t.parent.assign(n, -1);
    t.parent_edge.assign(n, -1);
    t.up_w.assign(n, Rational(0));
    t.children.assign(n, {});
    t.labels = g.labels();
    t.order.reserve(n);
    t.order.push_back(root);
    for (std::size_t i = 0; i < t.order.size(); ++i) {
        int x = t.order[i];
        for (auto [y, e] : g.neighbors(x)) {  // ascending, so children end up sorted
            if (y == t.parent[x]) continue;
            t.parent[y] = x;
            t.parent_edge[y] = e;
            t.up_w[y] = g.edge(e).w;
            t.children[x].push_back(y);
            t.order.push_back(y);
        }
    }

    t.tin.assign(n, 0);
    t.tout.assign(n, 0);
    int clock = 0;
    std::vector<std::pair<int, bool>> dfs = {{root, false}};
    while (!dfs.empty()) {
        auto [x, leaving] = dfs.back();
        dfs.pop_back();
        if (leaving) {
            t.tout[x] = clock;
            continue;
        }
        t.tin[x] = clock++;
        dfs.push_back({x, true});
        for (auto it = t.children[x].rbegin(); it != t.children[x].rend(); ++it)
            dfs.push_back({*it, false});
    }
    return t;
}

}  // namespace kantor
