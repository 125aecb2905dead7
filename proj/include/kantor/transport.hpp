#pragma once

// The generic oracle: exact minimum-cost transport by successive shortest
// paths, with every capacity, cost, and flow a rational. Slow and sure, it
// is the reference every closed form in the library is checked against.

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "lipschitz.hpp"
#include "measure.hpp"
#include "metric.hpp"
#include "spanning.hpp"
#include "tree.hpp"

namespace kantor {

namespace detail {

class MinCostFlow {
public:
    explicit MinCostFlow(int n) : adj_(n) {}

    void add_arc(int from, int to, Rational cap, Rational cost) {
        adj_[from].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({from, to, std::move(cap), cost});
        adj_[to].push_back(static_cast<int>(arcs_.size()));
        arcs_.push_back({to, from, Rational(0), -cost});
    }

    // Pushes flow from s to t along cheapest residual paths until t becomes
    // unreachable; returns (total flow, total cost). Bellman-Ford style
    // label correction handles the negative reverse costs of the residual
    // network exactly.
    std::pair<Rational, Rational> run(int s, int t) {
        Rational flow = 0, cost = 0;
        const int n = static_cast<int>(adj_.size());
        std::vector<Rational> dist(n);
        std::vector<char> reached(n), queued(n);
        std::vector<int> via(n);
        while (true) {
            std::fill(reached.begin(), reached.end(), 0);
            std::fill(queued.begin(), queued.end(), 0);
            std::deque<int> queue = {s};
            dist[s] = 0;
            reached[s] = queued[s] = 1;
            while (!queue.empty()) {
                int x = queue.front();
                queue.pop_front();
                queued[x] = 0;
                for (int k : adj_[x]) {
                    const Arc& a = arcs_[k];
                    if (a.from != x || sgn(a.cap) <= 0) continue;
                    Rational cand = dist[x] + a.cost;
                    if (!reached[a.to] || cand < dist[a.to]) {
                        reached[a.to] = 1;
                        dist[a.to] = cand;
                        via[a.to] = k;
                        if (!queued[a.to]) {
                            queued[a.to] = 1;
                            queue.push_back(a.to);
                        }
                    }
                }
            }
            if (!reached[t]) break;
            Rational push = arcs_[via[t]].cap;
            for (int x = t; x != s; x = arcs_[via[x]].from)
                if (arcs_[via[x]].cap < push) push = arcs_[via[x]].cap;
            for (int x = t; x != s; x = arcs_[via[x]].from) {
                arcs_[via[x]].cap -= push;
                arcs_[via[x] ^ 1].cap += push;
            }
            flow += push;
            cost += push * dist[t];
        }
        return {flow, cost};
    }

    // Flow carried by the k-th added arc (pair index, forward direction).
    const Rational& flow_on(int pair_index) const { return arcs_[2 * pair_index + 1].cap; }

private:
    struct Arc {
        int from, to;
        Rational cap;
        Rational cost;
    };
    std::vector<std::vector<int>> adj_;
    std::vector<Arc> arcs_;
};

// Removes cycles from the support of a transport plan between disjoint
// source and sink sets, preserving margins and cost. An optimal plan stays
// optimal (every alternating support cycle is cost-neutral), and a plan
// with forest support is a vertex of the transportation polytope, which
// makes the output canonical enough to compare across methods.
inline void cancel_support_cycles(std::vector<CouplingEntry>& entries, const DistanceMatrix& d) {
    const int n = d.size();
    auto drop_zeros = [&] {
        std::erase_if(entries, [](const CouplingEntry& e) { return sgn(e.mass) == 0; });
    };
    drop_zeros();
    while (true) {
        // Grow a forest over (source x) and (sink y + n) nodes; the first
        // entry that closes a cycle is cancelled against the forest path.
        std::vector<int> parent_node(2 * n, -1), parent_entry(2 * n, -1);
        std::vector<char> seen(2 * n, 0);
        std::vector<std::vector<std::pair<int, int>>> forest(2 * n);  // (node, entry)
        int closing = -1;
        {
            DisjointSets dsu(2 * n);
            for (int k = 0; k < static_cast<int>(entries.size()) && closing < 0; ++k) {
                int a = entries[k].x, b = entries[k].y + n;
                if (dsu.unite(a, b)) {
                    forest[a].push_back({b, k});
                    forest[b].push_back({a, k});
                } else {
                    closing = k;
                }
            }
        }
        if (closing < 0) return;

        // Path through the forest from one endpoint of the closing entry to
        // the other, then shift mass around the cycle: entries traversed
        // source-to-sink gain, the others lose, by the smallest losing mass.
        int from = entries[closing].x, to = entries[closing].y + n;
        std::vector<int> stack = {from};
        seen[from] = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            if (x == to) break;
            for (auto [y, k] : forest[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    parent_node[y] = x;
                    parent_entry[y] = k;
                    stack.push_back(y);
                }
        }
        std::vector<std::pair<int, int>> cycle = {{closing, +1}};  // (entry, direction)
        Rational net_cost = d(entries[closing].x, entries[closing].y);
        for (int x = to; x != from; x = parent_node[x]) {
            int k = parent_entry[x];
            // moving from parent_node[x] to x: source->sink iff x is a sink node
            int dir = x >= n ? +1 : -1;
            // the path runs to->from, i.e. against our orientation: flip
            dir = -dir;
            cycle.push_back({k, dir});
            net_cost += dir * d(entries[k].x, entries[k].y);
        }
        if (sgn(net_cost) != 0) throw Error("support cycle with non-zero cost in an optimal plan");
        Rational shift(0);
        bool first = true;
        for (auto [k, dir] : cycle)
            if (dir < 0 && (first || entries[k].mass < shift)) shift = entries[k].mass, first = false;
        for (auto [k, dir] : cycle) entries[k].mass += dir * shift;
        drop_zeros();
    }
}

// Exact minimum-cost transport of `supply` onto `demand` (vertex-indexed
// nonnegative vectors of equal total mass). Returns the moved entries with
// forest support and the optimal cost.
inline std::pair<std::vector<CouplingEntry>, Rational> min_cost_transport(
    const DistanceMatrix& d, const std::vector<Rational>& supply,
    const std::vector<Rational>& demand) {
    const int n = d.size();
    std::vector<int> sources, sinks;
    for (int x = 0; x < n; ++x)
        if (sgn(supply[x]) > 0) sources.push_back(x);
    for (int y = 0; y < n; ++y)
        if (sgn(demand[y]) > 0) sinks.push_back(y);
    if (sources.empty()) return {{}, Rational(0)};

    const int p = static_cast<int>(sources.size()), q = static_cast<int>(sinks.size());
    MinCostFlow net(p + q + 2);
    const int s = p + q, t = p + q + 1;
    for (int i = 0; i < p; ++i) net.add_arc(s, i, supply[sources[i]], Rational(0));
    for (int j = 0; j < q; ++j) net.add_arc(p + j, t, demand[sinks[j]], Rational(0));
    std::vector<std::pair<int, int>> lane;  // (i, j) per transport arc, in add order
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < q; ++j) {
            net.add_arc(i, p + j, supply[sources[i]], d(sources[i], sinks[j]));
            lane.push_back({i, j});
        }
    auto [flow, cost] = net.run(s, t);
    Rational total = 0;
    for (int i = 0; i < p; ++i) total += supply[sources[i]];
    if (flow != total) throw Error("transport network failed to route all mass");

    std::vector<CouplingEntry> entries;
    for (int k = 0; k < static_cast<int>(lane.size()); ++k) {
        const Rational& m = net.flow_on(p + q + k);
        if (sgn(m) > 0) entries.push_back({sources[lane[k].first], sinks[lane[k].second], m});
    }
    cancel_support_cycles(entries, d);
    return {std::move(entries), std::move(cost)};
}

}  // namespace detail

struct LpDistance {
    Rational value;
    Coupling plan;
};

// The Kantorovich distance as an honest linear program: ship the surplus of
// mu onto the surplus of nu at metric cost, leave the common mass in place.
// The returned plan is a vertex of the coupling polytope.
inline LpDistance primal_lp_distance(const DistanceMatrix& d, const ProbabilityFunction& mu,
                                     const ProbabilityFunction& nu) {
    if (mu.size() != d.size() || nu.size() != d.size())
        throw ValidationError("measures do not match the metric");
    const int n = d.size();
    std::vector<Rational> surplus(n), deficit(n);
    std::vector<CouplingEntry> entries;
    for (int x = 0; x < n; ++x) {
        Rational diff = mu(x) - nu(x);
        surplus[x] = positive_part(diff);
        deficit[x] = negative_part(diff);
        Rational stay = mu(x) < nu(x) ? mu(x) : nu(x);
        if (sgn(stay) > 0) entries.push_back({x, x, stay});
    }
    auto [moved, cost] = detail::min_cost_transport(d, surplus, deficit);
    entries.insert(entries.end(), moved.begin(), moved.end());
    return {std::move(cost), Coupling(mu, nu, std::move(entries))};
}

// Norm of a zero-mass vector through the same program: transport the
// positive part onto the negative part.
inline Rational kb_norm(const DistanceMatrix& d, const ZeroMassVector& xi) {
    if (xi.size() != d.size()) throw ValidationError("mass vector does not match the metric");
    std::vector<Rational> pos(xi.size()), neg(xi.size());
    for (int x = 0; x < xi.size(); ++x) {
        pos[x] = positive_part(xi(x));
        neg[x] = negative_part(xi(x));
    }
    return detail::min_cost_transport(d, pos, neg).second;
}

struct DualEnumeration {
    Rational value;
    SignAssignment witness;  // first maximizing sign pattern in scan order
};

// Brute-force dual maximum on a tree: the unit ball of potentials is a box
// in slope coordinates, so scanning all 2^(n-1) sign corners and pairing
// each with xi attains the norm. Exponential by design; guarded to n <= 16.
inline DualEnumeration dual_tree_enumeration(const RootedTree& t, const ZeroMassVector& xi) {
    if (t.n > 16)
        throw CapacityError("sign enumeration needs 2^(n-1) patterns; refusing n > 16",
                            static_cast<unsigned long long>(t.n));
    std::vector<int> free_vertices;
    for (int x = 0; x < t.n; ++x)
        if (x != t.root) free_vertices.push_back(x);
    const int k = static_cast<int>(free_vertices.size());

    DualEnumeration best{Rational(0), SignAssignment{std::vector<int>(t.n, 1)}};
    bool have = false;
    std::vector<Rational> u(t.n);
    for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        SignAssignment eps{std::vector<int>(t.n, 1)};
        for (int b = 0; b < k; ++b) eps.sign[free_vertices[b]] = (mask >> b & 1) ? 1 : -1;
        u[t.root] = 0;
        for (int x : t.order)
            if (x != t.root) u[x] = u[t.parent[x]] + t.up_w[x] * eps.sign[x];
        Rational val = dot(xi.values(), u);
        if (!have || val > best.value) {
            best = {std::move(val), std::move(eps)};
            have = true;
        }
    }
    return best;
}

struct MarginViolation {
    enum class Side { row, column };
    Side side;
    int vertex;
};

struct CouplingCheck {
    bool feasible;
    Rational cost;  // transport cost of the entries, margins right or not
    std::optional<MarginViolation> violation;
};

// Does the plan really have its declared margins, and what does it cost?
inline CouplingCheck verify_coupling(const Coupling& plan, const DistanceMatrix& d) {
    if (plan.size() != d.size()) throw ValidationError("coupling does not match the metric");
    CouplingCheck out{true, Rational(0), std::nullopt};
    for (const CouplingEntry& e : plan.entries()) out.cost += e.mass * d(e.x, e.y);
    std::vector<Rational> rows = plan.row_sums(), cols = plan.column_sums();
    for (int x = 0; x < plan.size(); ++x)
        if (rows[x] != plan.mu()(x)) {
            out.feasible = false;
            out.violation = {MarginViolation::Side::row, x};
            return out;
        }
    for (int y = 0; y < plan.size(); ++y)
        if (cols[y] != plan.nu()(y)) {
            out.feasible = false;
            out.violation = {MarginViolation::Side::column, y};
            return out;
        }
    return out;
}

}  // namespace kantor
