#pragma once

// Finite connected weighted graph with string vertex labels. Construction
// validates the full contract: no loops, no parallel edges, strictly
// positive weights, connectedness. Vertex indices are dense, assigned by
// first appearance; most of the library works on indices and only the
// boundaries (IO, CLI) touch labels.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace kantor {

struct Edge {
    int u, v;
    Rational w;
};

class WeightedGraph {
public:
    WeightedGraph(std::vector<std::string> labels, std::vector<Edge> edges)
        : labels_(std::move(labels)), edges_(std::move(edges)) {
        const int n = static_cast<int>(labels_.size());
        if (n == 0) throw ValidationError("graph has no vertices");
        for (int i = 0; i < n; ++i) {
            if (labels_[i].empty()) throw ValidationError("empty vertex label");
            if (!index_.emplace(labels_[i], i).second)
                throw ValidationError("duplicate vertex label '" + labels_[i] + "'");
        }
        std::map<std::pair<int, int>, int> seen;
        for (const Edge& e : edges_) {
            if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
                throw ValidationError("edge endpoint out of range");
            if (e.u == e.v)
                throw ValidationError("self-loop at vertex '" + labels_[e.u] + "'");
            if (sgn(e.w) <= 0)
                throw ValidationError("non-positive weight on edge '" + labels_[e.u] +
                                      "' '" + labels_[e.v] + "'");
            auto key = std::minmax(e.u, e.v);
            if (!seen.emplace(key, 0).second)
                throw ValidationError("parallel edge '" + labels_[e.u] + "' '" +
                                      labels_[e.v] + "' (multigraphs are not supported)");
        }
        adj_.resize(n);
        for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
            adj_[edges_[i].u].push_back({edges_[i].v, i});
            adj_[edges_[i].v].push_back({edges_[i].u, i});
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

        // connectivity sweep
        std::vector<char> visited(n, 0);
        std::vector<int> stack = {0};
        visited[0] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (auto [y, e] : adj_[x])
                if (!visited[y]) visited[y] = 1, stack.push_back(y);
        }
        for (int x = 0; x < n; ++x)
            if (!visited[x])
                throw ValidationError("graph is disconnected (vertex '" + labels_[x] +
                                      "' unreachable from '" + labels_[0] + "')");
    }

    // Convenience for programmatic construction: vertices labeled "1".."n".
    static WeightedGraph from_indexed(int n, std::vector<Edge> edges) {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (int i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
        return WeightedGraph(std::move(labels), std::move(edges));
    }

    int vertex_count() const { return static_cast<int>(labels_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int e) const { return edges_[e]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int v) const { return labels_[v]; }

    std::optional<int> find_vertex(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    // Pairs (neighbor vertex, edge index), sorted by neighbor.
    const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }

    int degree(int v) const { return static_cast<int>(adj_[v].size()); }

    std::optional<int> edge_between(int u, int v) const {
        for (auto [y, e] : adj_[u])
            if (y == v) return e;
        return std::nullopt;
    }

    bool is_tree() const { return edge_count() == vertex_count() - 1; }

    // Every vertex of a cycle graph has degree 2 (and the graph is connected).
    bool is_cycle() const {
        if (vertex_count() < 3 || edge_count() != vertex_count()) return false;
        for (int v = 0; v < vertex_count(); ++v)
            if (degree(v) != 2) return false;
        return true;
    }

    // Subgraph on all vertices keeping only the given edges (e.g. a spanning
    // tree); edge indices refer to this graph and order is preserved.
    WeightedGraph edge_subgraph(const std::vector<int>& edge_ids) const {
        std::vector<Edge> kept;
        kept.reserve(edge_ids.size());
        for (int e : edge_ids) kept.push_back(edges_[e]);
        return WeightedGraph(labels_, std::move(kept));
    }

    // Induced subgraph; `vertices` lists original indices, which become the
    // new dense indices in the given order. Must induce a connected graph.
    WeightedGraph induced_subgraph(const std::vector<int>& vertices) const {
        std::vector<int> to_local(vertex_count(), -1);
        std::vector<std::string> labels;
        for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
            to_local[vertices[i]] = i;
            labels.push_back(labels_[vertices[i]]);
        }
        std::vector<Edge> kept;
        for (const Edge& e : edges_)
            if (to_local[e.u] >= 0 && to_local[e.v] >= 0)
                kept.push_back({to_local[e.u], to_local[e.v], e.w});
        return WeightedGraph(std::move(labels), std::move(kept));
    }

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Incremental construction from labeled edges (the file-format path).
class GraphBuilder {
public:
    int vertex(const std::string& label) {
        auto it = index_.find(label);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(labels_.size());
        labels_.push_back(label);
        index_.emplace(label, id);
        return id;
    }

    void add_edge(const std::string& a, const std::string& b, Rational w) {
        int u = vertex(a), v = vertex(b);
        edges_.push_back({u, v, std::move(w)});
    }

    WeightedGraph build() && { return WeightedGraph(std::move(labels_), std::move(edges_)); }

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    std::map<std::string, int> index_;
};

}  // namespace kantor
