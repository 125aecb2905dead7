#pragma once

// Cut seminorms. A weighted family of proper vertex subsets induces both a
// semimetric (how many cuts separate two vertices, weighted) and a norm on
// zero-mass vectors (how much mass each cut intercepts, weighted). Trees
// are the motivating case: the subtrees hanging off each edge realize the
// tree norm exactly.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lipschitz.hpp"
#include "measure.hpp"
#include "metric.hpp"
#include "tree.hpp"

namespace kantor {

struct CutEntry {
    std::uint64_t members;  // bit x set when vertex x belongs to the subset
    Rational lambda;        // strictly positive weight
};

class CutFamily {
public:
    // Duplicate subsets are merged (weights add) keeping first-occurrence
    // order, so equal families built in different ways print the same. The
    // optional base records a vertex no subset contains.
    CutFamily(int n, std::vector<CutEntry> entries, std::optional<int> base = std::nullopt)
        : n_(n), base_(base) {
        if (n < 1) throw ValidationError("cut family needs a vertex set");
        if (n > 64)
            throw CapacityError("cut subsets are stored as 64-bit masks; vertex count " +
                                    std::to_string(n) + " exceeds that",
                                static_cast<unsigned long long>(n));
        const std::uint64_t full = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
        for (CutEntry& e : entries) {
            if (e.members == 0) throw ValidationError("empty cut subset");
            if ((e.members | full) != full) throw ValidationError("cut subset out of range");
            if (e.members == full) throw ValidationError("cut subset must be proper");
            if (sgn(e.lambda) <= 0) throw ValidationError("cut weight must be positive");
            if (base_ && (e.members >> *base_ & 1))
                throw ValidationError("cut subset contains the base vertex");
            bool merged = false;
            for (CutEntry& kept : entries_)
                if (kept.members == e.members) {
                    kept.lambda += e.lambda;
                    merged = true;
                    break;
                }
            if (!merged) entries_.push_back(std::move(e));
        }
        if (entries_.empty()) throw ValidationError("cut family has no subsets");
    }

    int vertex_count() const { return n_; }
    const std::vector<CutEntry>& entries() const { return entries_; }
    std::optional<int> base() const { return base_; }

    bool adapted_to(int x0) const {
        for (const CutEntry& e : entries_)
            if (e.members >> x0 & 1) return false;
        return true;
    }

private:
    int n_;
    std::optional<int> base_;
    std::vector<CutEntry> entries_;
};

// The elementary semimetric of one subset: 1 when the subset separates x
// from y, else 0.
inline int cut_semimetric(std::uint64_t members, int x, int y) {
    return ((members >> x ^ members >> y) & 1) ? 1 : 0;
}

inline Rational cut_mass(const CutEntry& e, const ZeroMassVector& xi) {
    Rational s = 0;
    for (int x = 0; x < xi.size(); ++x)
        if (e.members >> x & 1) s += xi(x);
    return s;
}

struct CutNorm {
    Rational value;
    std::vector<Rational> contributions;  // lambda * |mass caught|, per entry
};

// Weighted total of the mass each cut intercepts.
inline CutNorm cut_norm(const CutFamily& c, const ZeroMassVector& xi) {
    if (xi.size() != c.vertex_count()) throw ValidationError("mass vector does not match the cuts");
    CutNorm out{Rational(0), {}};
    for (const CutEntry& e : c.entries()) {
        out.contributions.push_back(e.lambda * abs(cut_mass(e, xi)));
        out.value += out.contributions.back();
    }
    return out;
}

struct CutDistance {
    DistanceMatrix d;
    // Distinct vertices no cut separates; the semimetric degenerates there.
    std::vector<std::pair<int, int>> not_separated;
};

inline CutDistance cut_distance(const CutFamily& c) {
    const int n = c.vertex_count();
    CutDistance out{DistanceMatrix(n), {}};
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y) {
            Rational d = 0;
            for (const CutEntry& e : c.entries())
                if (cut_semimetric(e.members, x, y)) d += e.lambda;
            out.d(x, y) = d;
            out.d(y, x) = std::move(d);
            if (sgn(out.d(x, y)) == 0) out.not_separated.push_back({x, y});
        }
    return out;
}

// The cuts of a tree: one subset per non-root vertex (its subtree), with
// the parent-edge weight. This family reproduces the tree's own geometry:
// its distance is the path metric and its norm is the tree norm. Entries
// appear in vertex order, so entry i belongs to the i-th non-root vertex.
inline CutFamily tree_cut_realization(const RootedTree& t) {
    if (t.n > 64)
        throw CapacityError("cut subsets are stored as 64-bit masks; vertex count " +
                                std::to_string(t.n) + " exceeds that",
                            static_cast<unsigned long long>(t.n));
    std::vector<std::uint64_t> subtree(t.n, 0);
    for (auto it = t.order.rbegin(); it != t.order.rend(); ++it) {
        subtree[*it] |= std::uint64_t(1) << *it;
        if (*it != t.root) subtree[t.parent[*it]] |= subtree[*it];
    }
    std::vector<CutEntry> entries;
    for (int x = 0; x < t.n; ++x)
        if (x != t.root) entries.push_back({subtree[x], t.up_w[x]});
    return CutFamily(t.n, std::move(entries), t.root);
}

// Re-bases a family: subsets containing x0 are replaced by their
// complements. On zero-mass vectors nothing changes (a set and its
// complement catch the same mass), but now potentials vanish at x0.
inline CutFamily adapt_realization(const CutFamily& c, int x0) {
    const int n = c.vertex_count();
    if (x0 < 0 || x0 >= n) throw ValidationError("base vertex out of range");
    const std::uint64_t full = n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1;
    std::vector<CutEntry> entries;
    for (const CutEntry& e : c.entries())
        entries.push_back({(e.members >> x0 & 1) ? e.members ^ full : e.members, e.lambda});
    return CutFamily(n, std::move(entries), x0);
}

// Potential of a sign choice per cut: u(x) sums, over the subsets holding
// x, the signed weight. Requires a based (adapted) family so that u
// vanishes at the base; signs align with entry order.
inline LipschitzFunction cut_potential(const CutFamily& c, const std::vector<int>& eps) {
    if (!c.base()) throw ValidationError("cut potential needs a based (adapted) family");
    if (eps.size() != c.entries().size())
        throw ValidationError("one sign per cut subset required");
    std::vector<Rational> u(c.vertex_count(), Rational(0));
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (eps[i] != 1 && eps[i] != -1) throw ValidationError("signs must be +1 or -1");
        const CutEntry& e = c.entries()[i];
        for (int x = 0; x < c.vertex_count(); ++x)
            if (e.members >> x & 1) u[x] += e.lambda * eps[i];
    }
    return LipschitzFunction(std::move(u), *c.base());
}

// The dual route to the cut norm: sign each subset by the mass it catches,
// build the potential, pair with xi. Distributing the sum shows this equals
// cut_norm; computing it the long way is the point (it cross-checks both).
inline Rational cut_norm_via_potentials(const CutFamily& c, const ZeroMassVector& xi,
                                        int sign0 = 1) {
    if (sign0 != 1 && sign0 != -1) throw ValidationError("sign0 must be +1 or -1");
    if (xi.size() != c.vertex_count()) throw ValidationError("mass vector does not match the cuts");
    std::vector<int> eps;
    eps.reserve(c.entries().size());
    for (const CutEntry& e : c.entries()) {
        int s = sgn(cut_mass(e, xi));
        eps.push_back(s != 0 ? s : sign0);
    }
    return dot(xi.values(), cut_potential(c, eps).values());
}

}  // namespace kantor
