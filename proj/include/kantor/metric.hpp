#pragma once

// Shortest-path metric of a weighted graph, plus the small geometric
// vocabulary built on it: close pairs (adjacent vertices whose edge is a
// shortest path), lexicographic geodesics, and metric-axiom validation.

#include <string>
#include <vector>

#include "graph.hpp"

namespace kantor {

class DistanceMatrix {
public:
    explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n) {}

    int size() const { return n_; }
    Rational& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * n_ + j]; }
    const Rational& operator()(int i, int j) const {
        return d_[static_cast<std::size_t>(i) * n_ + j];
    }

private:
    int n_;
    std::vector<Rational> d_;
};

// Dijkstra from every source with exact arithmetic. The scan picks the
// smallest tentative distance, lowest index on ties, so results and
// downstream tie-breaks are deterministic. Quadratic per source, which is
// the right trade at the scale exact arithmetic is useful for.
inline DistanceMatrix all_pairs_shortest_paths(const WeightedGraph& g) {
    const int n = g.vertex_count();
    DistanceMatrix d(n);
    std::vector<Rational> dist(n);
    std::vector<char> reached(n), done(n);
    for (int s = 0; s < n; ++s) {
        std::fill(reached.begin(), reached.end(), 0);
        std::fill(done.begin(), done.end(), 0);
        dist[s] = 0;
        reached[s] = 1;
        for (int round = 0; round < n; ++round) {
            int x = -1;
            for (int v = 0; v < n; ++v)
                if (reached[v] && !done[v] && (x < 0 || dist[v] < dist[x])) x = v;
            if (x < 0) break;  // cannot happen on a connected graph
            done[x] = 1;
            for (auto [y, e] : g.neighbors(x)) {
                Rational cand = dist[x] + g.edge(e).w;
                if (!reached[y] || cand < dist[y]) {
                    reached[y] = 1;
                    dist[y] = cand;
                }
            }
        }
        for (int v = 0; v < n; ++v) d(s, v) = dist[v];
    }
    return d;
}

// x and y are close when some edge joins them and that edge is itself a
// shortest path. Consecutive vertices of any geodesic are close.
inline bool is_close(const WeightedGraph& g, const DistanceMatrix& d, int x, int y) {
    if (x == y) return false;
    auto e = g.edge_between(x, y);
    return e && g.edge(*e).w == d(x, y);
}

// Edge indices whose endpoints are close.
inline std::vector<int> close_edges(const WeightedGraph& g, const DistanceMatrix& d) {
    std::vector<int> out;
    for (int e = 0; e < g.edge_count(); ++e)
        if (g.edge(e).w == d(g.edge(e).u, g.edge(e).v)) out.push_back(e);
    return out;
}

// Lexicographically smallest shortest path from x to y, as a vertex list.
// Greedy step: move to the lowest-index neighbor that stays on a shortest
// path. Each step lands on a close pair automatically (a cheaper detour
// would shorten the whole path).
inline std::vector<int> geodesic(const WeightedGraph& g, const DistanceMatrix& d, int x, int y) {
    std::vector<int> path = {x};
    int cur = x;
    while (cur != y) {
        int next = -1;
        for (auto [z, e] : g.neighbors(cur)) {  // neighbors sorted ascending
            if (g.edge(e).w + d(z, y) == d(cur, y)) {
                next = z;
                break;
            }
        }
        if (next < 0) throw Error("geodesic reconstruction failed");  // unreachable
        path.push_back(next);
        cur = next;
    }
    return path;
}

struct MetricReport {
    enum class Axiom { ok, diagonal, symmetry, positivity, triangle };
    Axiom violated = Axiom::ok;
    int x = -1, y = -1, z = -1;  // witness indices; z only for triangle

    bool ok() const { return violated == Axiom::ok; }

    std::string describe() const {
        auto at = [](int i, int j) {
            return "d(" + std::to_string(i) + "," + std::to_string(j) + ")";
        };
        switch (violated) {
            case Axiom::ok: return "metric axioms hold";
            case Axiom::diagonal: return at(x, x) + " != 0";
            case Axiom::symmetry: return at(x, y) + " != " + at(y, x);
            case Axiom::positivity: return at(x, y) + " <= 0";
            case Axiom::triangle: return at(x, z) + " > " + at(x, y) + " + " + at(y, z);
        }
        return "";
    }
};

// Checks the axioms in a fixed order (diagonal, symmetry, positivity,
// triangle inequality) and reports the first violation found.
inline MetricReport validate_metric(const DistanceMatrix& d) {
    const int n = d.size();
    MetricReport r;
    for (int x = 0; x < n; ++x)
        if (sgn(d(x, x)) != 0) {
            r.violated = MetricReport::Axiom::diagonal, r.x = x;
            return r;
        }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (d(x, y) != d(y, x)) {
                r.violated = MetricReport::Axiom::symmetry, r.x = x, r.y = y;
                return r;
            }
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            if (sgn(d(x, y)) <= 0) {
                r.violated = MetricReport::Axiom::positivity, r.x = x, r.y = y;
                return r;
            }
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                if (d(x, z) > d(x, y) + d(y, z)) {
                    r.violated = MetricReport::Axiom::triangle;
                    r.x = x, r.y = y, r.z = z;
                    return r;
                }
    return r;
}

}  // namespace kantor
