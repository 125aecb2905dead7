#pragma once

// Exhaustive spanning-tree enumeration. Each edge, in input order, is
// either put into the tree or discarded; discarding is only explored when
// the remaining edges can still connect the graph, so every leaf of the
// recursion is a spanning tree and trees are emitted deterministically
// (include-first). A hard limit guards against exponential explosions.

#include <algorithm>
#include <numeric>
#include <vector>

#include "graph.hpp"

namespace kantor {

inline constexpr unsigned long long default_tree_limit = 1'000'000;

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }

    bool unite(int x, int y) {
        x = find(x), y = find(y);
        if (x == y) return false;
        if (x > y) std::swap(x, y);
        parent_[y] = x;
        return true;
    }

private:
    std::vector<int> parent_;
};

// Calls emit(edge_ids) for every spanning tree, edge ids ascending. Returns
// the number of trees. Throws CapacityError as soon as one more tree than
// `limit` is found.
template <typename F>
unsigned long long enumerate_spanning_trees(const WeightedGraph& g, F&& emit,
                                            unsigned long long limit = default_tree_limit) {
    const int n = g.vertex_count();
    const int m = g.edge_count();
    unsigned long long count = 0;
    std::vector<int> chosen;
    chosen.reserve(n - 1);

    auto remaining_can_connect = [&](DisjointSets dsu, int from, int components) {
        for (int e = from; e < m && components > 1; ++e)
            if (dsu.unite(g.edge(e).u, g.edge(e).v)) --components;
        return components == 1;
    };

    auto rec = [&](auto&& self, int i, DisjointSets dsu, int components) -> void {
        if (components == 1) {
            if (++count > limit)
                throw CapacityError("spanning tree enumeration exceeded the limit of " +
                                        std::to_string(limit) + " trees",
                                    count);
            emit(const_cast<const std::vector<int>&>(chosen));
            return;
        }
        // i < m here: feasibility of the parent call guarantees completion
        const Edge& e = g.edge(i);
        DisjointSets merged = dsu;
        if (merged.unite(e.u, e.v)) {
            chosen.push_back(i);
            self(self, i + 1, std::move(merged), components - 1);
            chosen.pop_back();
            if (remaining_can_connect(dsu, i + 1, components))
                self(self, i + 1, std::move(dsu), components);
        } else {
            // e closes a cycle with the chosen edges; it is in no extension
            self(self, i + 1, std::move(dsu), components);
        }
    };

    rec(rec, 0, DisjointSets(n), n);
    return count;
}

inline std::vector<std::vector<int>> all_spanning_trees(
    const WeightedGraph& g, unsigned long long limit = default_tree_limit) {
    std::vector<std::vector<int>> trees;
    enumerate_spanning_trees(g, [&](const std::vector<int>& t) { trees.push_back(t); }, limit);
    return trees;
}

inline unsigned long long count_spanning_trees(const WeightedGraph& g,
                                               unsigned long long limit = default_tree_limit) {
    return enumerate_spanning_trees(g, [](const std::vector<int>&) {}, limit);
}

// Completes an acyclic edge set to a spanning tree, greedily scanning the
// remaining edges in input order (so the result is deterministic).
inline std::vector<int> extend_forest_to_spanning_tree(const WeightedGraph& g,
                                                       const std::vector<int>& forest_edges) {
    DisjointSets dsu(g.vertex_count());
    std::vector<char> in_tree(g.edge_count(), 0);
    for (int e : forest_edges) {
        if (e < 0 || e >= g.edge_count()) throw ValidationError("forest edge index out of range");
        if (in_tree[e]) throw ValidationError("duplicate forest edge");
        if (!dsu.unite(g.edge(e).u, g.edge(e).v))
            throw ValidationError("forest edges contain a cycle");
        in_tree[e] = 1;
    }
    std::vector<int> tree(forest_edges);
    for (int e = 0; e < g.edge_count(); ++e)
        if (!in_tree[e] && dsu.unite(g.edge(e).u, g.edge(e).v)) {
            tree.push_back(e);
            in_tree[e] = 1;
        }
    std::sort(tree.begin(), tree.end());
    return tree;  // connected input graph guarantees n-1 edges
}

}  // namespace kantor
