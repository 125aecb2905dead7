#pragma once

// Closed forms on trees. Once masses are summed over subtrees, everything
// about the transport problem is explicit: the norm is a weighted l1 norm
// of the subtree sums, the optimal dual potential follows their signs, and
// under a mass condition the optimal coupling itself moves each subtree
// surplus across its parent edge.

#include <optional>
#include <vector>

#include "lipschitz.hpp"
#include "measure.hpp"
#include "tree.hpp"

namespace kantor {

inline int sign_or(const Rational& q, int sign0) {
    int s = sgn(q);
    return s != 0 ? s : sign0;
}

struct TreeNorm {
    Rational value;
    // Coefficient of (delta_x - delta_parent(x)) in the optimal edge
    // representation of xi; per-vertex, zero at the root. These are exactly
    // the subtree sums, and value = sum of w(x, x+) * |coefficient(x)|.
    CumulativeVector coefficients;
};

inline TreeNorm tree_norm(const RootedTree& t, const ZeroMassVector& xi) {
    TreeNorm out{Rational(0), cumulative(t, xi)};
    for (int x = 0; x < t.n; ++x)
        if (x != t.root) out.value += t.up_w[x] * abs(out.coefficients(x));
    return out;
}

// Signs of the subtree sums, zeros resolved by sign0. The root slot gets
// sign0 too (no edge hangs at the root; the value is never used).
inline SignAssignment aligned_signs(const RootedTree& t, const ZeroMassVector& xi, int sign0 = 1) {
    if (sign0 != 1 && sign0 != -1) throw ValidationError("sign0 must be +1 or -1");
    CumulativeVector c = cumulative(t, xi);
    SignAssignment eps;
    eps.sign.resize(t.n);
    for (int x = 0; x < t.n; ++x) eps.sign[x] = sign_or(c(x), sign0);
    return eps;
}

// The dual optimum: the extreme potential whose edge signs follow the
// subtree sums of xi. Pairing it with xi gives the tree norm.
inline LipschitzFunction aligned_dual(const RootedTree& t, const ZeroMassVector& xi,
                                      int sign0 = 1) {
    return extreme_lipschitz(t, aligned_signs(t, xi, sign0));
}

// Expands the norm as an explicitly signed double sum,
//   sum_y xi(y) * sum_{x over non-root ancestors of y} w(x, x+) * sign(X(x)),
// i.e. the pairing of xi with the aligned dual, and checks it reproduces
// the weighted l1 closed form before returning it.
inline Rational signed_expansion(const RootedTree& t, const ZeroMassVector& xi, int sign0 = 1) {
    Rational paired = dot(xi.values(), aligned_dual(t, xi, sign0).values());
    if (paired != tree_norm(t, xi).value)
        throw Error("signed expansion disagrees with the tree norm");
    return paired;
}

struct VertexCondition {
    int x;
    Rational available;  // mass the measure offers at x
    Rational required;   // mass the closed-form plan needs to route through x
    bool ok;
};

struct CouplingConditionReport {
    // Per-vertex feasibility of the closed-form plan, phrased once against
    // mu and once against nu. The two sides are equivalent (transposing the
    // plan and re-expanding the diagonal gives the identical matrix), so
    // they hold or fail together; both are reported for transparency.
    std::vector<VertexCondition> mu_side, nu_side;
    bool mu_side_ok = true, nu_side_ok = true;

    // Simple sufficient bound: every vertex carries at least |mu - nu|_1.
    Rational min_mass;
    Rational l1_distance;
    bool sufficient_bound_ok = false;

    bool feasible() const { return mu_side_ok || nu_side_ok; }
};

inline CouplingConditionReport check_coupling_condition(const RootedTree& t,
                                                        const ProbabilityFunction& mu,
                                                        const ProbabilityFunction& nu) {
    if (mu.size() != t.n || nu.size() != t.n)
        throw ValidationError("measures do not match the tree");
    CumulativeVector c = cumulative(t, zero_mass_from_pair(mu, nu));
    CouplingConditionReport r;
    for (int x = 0; x < t.n; ++x) {
        Rational need_mu = x == t.root ? Rational(0) : positive_part(c(x));
        Rational need_nu = x == t.root ? Rational(0) : negative_part(c(x));
        for (int child : t.children[x]) {
            need_mu += negative_part(c(child));
            need_nu += positive_part(c(child));
        }
        r.mu_side.push_back({x, mu(x), need_mu, mu(x) >= need_mu});
        r.nu_side.push_back({x, nu(x), need_nu, nu(x) >= need_nu});
        r.mu_side_ok = r.mu_side_ok && r.mu_side.back().ok;
        r.nu_side_ok = r.nu_side_ok && r.nu_side.back().ok;
    }
    r.min_mass = mu(0);
    for (int x = 1; x < t.n; ++x)
        if (mu(x) < r.min_mass) r.min_mass = mu(x);
    r.l1_distance = 0;
    for (int x = 0; x < t.n; ++x) r.l1_distance += abs(mu(x) - nu(x));
    r.sufficient_bound_ok = r.min_mass >= r.l1_distance;
    return r;
}

struct TreeCoupling {
    std::optional<Coupling> plan;  // present exactly when the condition holds
    Rational cost;                 // the tree norm of mu - nu, plan or not
    CouplingConditionReport report;
};

// Closed-form optimal coupling: each non-root vertex sends its positive
// subtree surplus across the parent edge (or receives the deficit), and
// whatever the per-vertex condition leaves over stays in place. When some
// diagonal entry would go negative the plan is withheld and the report
// says where.
inline TreeCoupling optimal_tree_coupling(const RootedTree& t, const ProbabilityFunction& mu,
                                          const ProbabilityFunction& nu) {
    ZeroMassVector xi = zero_mass_from_pair(mu, nu);
    TreeCoupling out{std::nullopt, tree_norm(t, xi).value, check_coupling_condition(t, mu, nu)};
    if (!out.report.feasible()) return out;

    const CumulativeVector c = cumulative(t, xi);
    std::vector<CouplingEntry> entries;
    for (int x = 0; x < t.n; ++x) {
        if (x != t.root) {
            Rational up = positive_part(c(x));
            Rational down = negative_part(c(x));
            if (sgn(up) > 0) entries.push_back({x, t.parent[x], up});
            if (sgn(down) > 0) entries.push_back({t.parent[x], x, down});
        }
        // mu(x) minus what the x row already sends: the diagonal leftover
        Rational diag = out.report.mu_side[x].available - out.report.mu_side[x].required;
        if (sgn(diag) > 0) entries.push_back({x, x, diag});
    }
    out.plan = Coupling(mu, nu, std::move(entries));
    return out;
}

struct Barycenter {
    int vertex;
    Rational value;                   // the attained minimum
    std::vector<Rational> transport;  // expected distance to each candidate
};

// Vertex minimizing the expected distance to a mu-distributed point; ties
// go to the lowest index.
inline Barycenter barycenter(const DistanceMatrix& d, const ProbabilityFunction& mu) {
    if (mu.size() != d.size()) throw ValidationError("measure does not match the metric");
    Barycenter b{0, Rational(0), {}};
    b.transport.reserve(d.size());
    for (int x = 0; x < d.size(); ++x) {
        Rational mean = 0;
        for (int y = 0; y < d.size(); ++y) mean += mu(y) * d(y, x);
        b.transport.push_back(mean);
        if (x == 0 || b.transport[x] < b.value) b.vertex = x, b.value = b.transport[x];
    }
    return b;
}

struct NormGradient {
    // The tree norm is piecewise linear in xi; it is differentiable at xi
    // exactly when no non-root subtree sum vanishes, and there the gradient
    // is the aligned dual potential.
    bool differentiable;
    std::vector<int> vanishing;  // vertices whose subtree sum is zero (root always)
    std::optional<LipschitzFunction> gradient;
};

inline NormGradient norm_gradient(const RootedTree& t, const ZeroMassVector& xi) {
    CumulativeVector c = cumulative(t, xi);
    NormGradient out{true, {}, std::nullopt};
    for (int x = 0; x < t.n; ++x)
        if (sgn(c(x)) == 0) {
            out.vanishing.push_back(x);
            if (x != t.root) out.differentiable = false;
        }
    if (out.differentiable) out.gradient = aligned_dual(t, xi);
    return out;
}

}  // namespace kantor
