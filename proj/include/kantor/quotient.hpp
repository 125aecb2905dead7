#pragma once

// Vertex identifications. A surjection onto a smaller graph computes norms
// faithfully when it shrinks no distance and realizes every close target
// pair by some fiber pair at exactly that distance; then the norm of a
// measure on the target is the norm of its best lift, and an optimal lift
// can be assembled step by step along target geodesics.

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "measure.hpp"
#include "metric.hpp"
#include "transport.hpp"

namespace kantor {

struct QuotientMap {
    WeightedGraph source, target;
    std::vector<int> map;  // source vertex -> target vertex

    QuotientMap(WeightedGraph src, WeightedGraph tgt, std::vector<int> q)
        : source(std::move(src)), target(std::move(tgt)), map(std::move(q)) {
        if (static_cast<int>(map.size()) != source.vertex_count())
            throw ValidationError("map must cover every source vertex");
        std::vector<char> hit(target.vertex_count(), 0);
        for (int img : map) {
            if (img < 0 || img >= target.vertex_count())
                throw ValidationError("map image out of range");
            hit[img] = 1;
        }
        for (int v = 0; v < target.vertex_count(); ++v)
            if (!hit[v])
                throw ValidationError("map is not surjective (vertex '" + target.label(v) +
                                      "' has no preimage)");
    }
};

// Builds the image graph of a vertex map: edges are the images of source
// edges, loops dropped, parallel images collapsed to the smallest weight.
// Connectivity of the source carries over.
inline WeightedGraph quotient_graph(const WeightedGraph& source, const std::vector<int>& map,
                                    std::vector<std::string> target_labels) {
    std::map<std::pair<int, int>, Rational> weight;
    std::vector<std::pair<int, int>> order;
    for (const Edge& e : source.edges()) {
        int a = map[e.u], b = map[e.v];
        if (a == b) continue;
        auto key = std::minmax(a, b);
        auto it = weight.find(key);
        if (it == weight.end()) {
            weight.emplace(key, e.w);
            order.push_back(key);
        } else if (e.w < it->second) {
            it->second = e.w;
        }
    }
    std::vector<Edge> edges;
    edges.reserve(order.size());
    for (auto key : order) edges.push_back({key.first, key.second, weight.at(key)});
    return WeightedGraph(std::move(target_labels), std::move(edges));
}

struct CloseWitness {
    int u, v;  // close target pair, u < v
    int x, y;  // fiber pair with q(x) = u, q(y) = v, d_X(x, y) = d_Y(u, v)
};

struct QuotientCheck {
    enum class Failure { none, expansion, exactness };
    Failure failure = Failure::none;
    int u = -1, v = -1;  // target pair at fault (or the unrealized close pair)
    int x = -1, y = -1;  // source pair at fault (expansion case)
    std::vector<CloseWitness> witnesses;  // realization per close target pair

    bool ok() const { return failure == Failure::none; }
};

// A map is exactly non-expansive when (i) images never drift further apart
// than their sources and (ii) every close pair of the target is realized
// exactly by some fiber pair. Witness search is in index order, so results
// are deterministic.
inline QuotientCheck check_exactly_nonexpansive(const QuotientMap& qm, const DistanceMatrix& dX,
                                                const DistanceMatrix& dY) {
    const int nx = qm.source.vertex_count();
    const int ny = qm.target.vertex_count();
    if (dX.size() != nx || dY.size() != ny)
        throw ValidationError("distance matrices do not match the quotient map");
    QuotientCheck out;
    for (int x = 0; x < nx; ++x)
        for (int y = x + 1; y < nx; ++y)
            if (dY(qm.map[x], qm.map[y]) > dX(x, y)) {
                out.failure = QuotientCheck::Failure::expansion;
                out.x = x, out.y = y, out.u = qm.map[x], out.v = qm.map[y];
                return out;
            }
    std::vector<std::vector<int>> fiber(ny);
    for (int x = 0; x < nx; ++x) fiber[qm.map[x]].push_back(x);
    for (int u = 0; u < ny; ++u)
        for (int v = u + 1; v < ny; ++v) {
            if (!is_close(qm.target, dY, u, v)) continue;
            bool found = false;
            for (int x : fiber[u]) {
                for (int y : fiber[v])
                    if (dX(x, y) == dY(u, v)) {
                        out.witnesses.push_back({u, v, x, y});
                        found = true;
                        break;
                    }
                if (found) break;
            }
            if (!found) {
                out.failure = QuotientCheck::Failure::exactness;
                out.u = u, out.v = v;
                return out;
            }
        }
    return out;
}

struct QuotientNorm {
    Rational value;
    std::vector<Rational> lift;  // zero-mass vector on the source attaining the value
};

// Norm of a zero-mass vector on the target, certified through the source:
// an optimal target plan is lifted move by move, each close step of a
// target geodesic replaced by its witness fiber pair. The lift pushes
// forward to eta, its source norm equals the direct target norm, and both
// are returned after being checked against each other.
inline QuotientNorm quotient_norm(const QuotientMap& qm, const DistanceMatrix& dX,
                                  const DistanceMatrix& dY, const ZeroMassVector& eta) {
    if (eta.size() != qm.target.vertex_count())
        throw ValidationError("mass vector does not match the target graph");
    QuotientCheck check = check_exactly_nonexpansive(qm, dX, dY);
    if (!check.ok()) {
        if (check.failure == QuotientCheck::Failure::expansion)
            throw ConditionError("map expands the pair '" + qm.source.label(check.x) + "' '" +
                                 qm.source.label(check.y) + "'");
        throw ConditionError("no fiber pair realizes the close target pair '" +
                             qm.target.label(check.u) + "' '" + qm.target.label(check.v) + "'");
    }
    std::map<std::pair<int, int>, std::pair<int, int>> witness;
    for (const CloseWitness& w : check.witnesses) witness[{w.u, w.v}] = {w.x, w.y};

    std::vector<Rational> pos(eta.size()), neg(eta.size());
    for (int v = 0; v < eta.size(); ++v) {
        pos[v] = positive_part(eta(v));
        neg[v] = negative_part(eta(v));
    }
    auto [moves, direct] = detail::min_cost_transport(dY, pos, neg);

    std::vector<Rational> lift(qm.source.vertex_count(), Rational(0));
    for (const CouplingEntry& move : moves) {
        std::vector<int> path = geodesic(qm.target, dY, move.x, move.y);
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int a = path[i], b = path[i + 1];
            auto [x, y] = witness.at(std::minmax(a, b));
            if (a > b) std::swap(x, y);  // stored orientation is low-to-high
            lift[x] += move.mass;
            lift[y] -= move.mass;
        }
    }
    ZeroMassVector xi(lift);
    if (push_forward(qm.map, eta.size(), xi.values()) != eta.values())
        throw Error("lift does not push forward to the target vector");
    Rational lifted = kb_norm(dX, xi);
    if (lifted != direct) throw Error("lifted norm disagrees with the target norm");
    return {std::move(direct), xi.values()};
}

}  // namespace kantor
