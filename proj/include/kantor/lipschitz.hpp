#pragma once

// Lipschitz test functions vanishing at a base vertex. These are the dual
// side of the transport problem: the distance between two measures equals
// the largest integral of a 1-Lipschitz function against their difference.
// Extreme points of that unit ball are recognized by walking tight close
// pairs; on trees they come from signing each edge.

#include <vector>

#include "measure.hpp"
#include "metric.hpp"
#include "tree.hpp"

namespace kantor {

class LipschitzFunction {
public:
    LipschitzFunction(std::vector<Rational> values, int base)
        : values_(std::move(values)), base_(base) {
        if (base_ < 0 || base_ >= static_cast<int>(values_.size()))
            throw ValidationError("base vertex out of range");
        if (sgn(values_[base_]) != 0)
            throw ValidationError("potential must vanish at the base vertex");
    }

    int size() const { return static_cast<int>(values_.size()); }
    int base() const { return base_; }
    const Rational& operator()(int x) const { return values_[x]; }
    const std::vector<Rational>& values() const { return values_; }

private:
    std::vector<Rational> values_;
    int base_;
};

// Largest slope over close pairs. Along a geodesic every step is close, so
// this already bounds |u(x)-u(y)| / d(x,y) over all pairs.
inline Rational lipschitz_constant(const WeightedGraph& g, const DistanceMatrix& d,
                                   const LipschitzFunction& u) {
    Rational best = 0;
    for (int e : close_edges(g, d)) {
        Rational slope = abs(u(g.edge(e).u) - u(g.edge(e).v)) / d(g.edge(e).u, g.edge(e).v);
        if (slope > best) best = slope;
    }
    return best;
}

// One sign per vertex; the root entry is ignored by tree constructions.
struct SignAssignment {
    std::vector<int> sign;
};

// The extreme 1-Lipschitz function of a signed tree: walking up from the
// root, each vertex adds its parent-edge weight with its own sign,
// u(x) = sum of w(y, y+) * sign(y) over non-root ancestors y of x.
inline LipschitzFunction extreme_lipschitz(const RootedTree& t, const SignAssignment& eps) {
    if (static_cast<int>(eps.sign.size()) != t.n)
        throw ValidationError("sign assignment does not match the tree");
    std::vector<Rational> u(t.n, Rational(0));
    for (int x : t.order) {
        if (x == t.root) continue;
        if (eps.sign[x] != 1 && eps.sign[x] != -1)
            throw ValidationError("signs must be +1 or -1");
        u[x] = u[t.parent[x]] + t.up_w[x] * eps.sign[x];
    }
    return LipschitzFunction(std::move(u), t.root);
}

// A 1-Lipschitz u is extreme in the unit ball exactly when every vertex is
// linked to the base by a chain of close pairs on which u attains the full
// distance. Throws if u is not 1-Lipschitz to begin with.
inline bool is_extreme_lipschitz(const WeightedGraph& g, const DistanceMatrix& d,
                                 const LipschitzFunction& u) {
    if (u.size() != g.vertex_count())
        throw ValidationError("potential does not match the graph");
    std::vector<std::vector<int>> tight(g.vertex_count());
    for (int e : close_edges(g, d)) {
        int x = g.edge(e).u, y = g.edge(e).v;
        Rational gap = abs(u(x) - u(y));
        if (gap > d(x, y))
            throw ValidationError("not 1-Lipschitz on the pair '" + g.label(x) + "' '" +
                                  g.label(y) + "'");
        if (gap == d(x, y)) {
            tight[x].push_back(y);
            tight[y].push_back(x);
        }
    }
    std::vector<char> reach(g.vertex_count(), 0);
    std::vector<int> stack = {u.base()};
    reach[u.base()] = 1;
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : tight[x])
            if (!reach[y]) reach[y] = 1, stack.push_back(y);
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!reach[v]) return false;
    return true;
}

// Slope coordinates on a tree: phi(x) = (u(x) - u(x+)) / w(x, x+) for
// non-root x. This is a bijection onto bounded functions of the non-root
// vertices, and the Lipschitz constant of u is the sup norm of phi, so the
// unit ball of potentials is a box with 2^(n-1) corners.
inline std::vector<Rational> lipschitz_to_slopes(const RootedTree& t,
                                                 const LipschitzFunction& u) {
    if (u.size() != t.n || u.base() != t.root)
        throw ValidationError("potential does not match the rooted tree");
    std::vector<Rational> phi(t.n, Rational(0));
    for (int x = 0; x < t.n; ++x)
        if (x != t.root) phi[x] = (u(x) - u(t.parent[x])) / t.up_w[x];
    return phi;
}

inline LipschitzFunction slopes_to_lipschitz(const RootedTree& t,
                                             const std::vector<Rational>& phi) {
    if (static_cast<int>(phi.size()) != t.n)
        throw ValidationError("slope vector does not match the tree");
    std::vector<Rational> u(t.n, Rational(0));
    for (int x : t.order)
        if (x != t.root) u[x] = u[t.parent[x]] + t.up_w[x] * phi[x];
    return LipschitzFunction(std::move(u), t.root);
}

}  // namespace kantor
