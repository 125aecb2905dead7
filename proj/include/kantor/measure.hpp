#pragma once

// Mass vectors over the vertex set: probability functions, differences of
// probabilities (zero total mass), couplings with declared margins, and the
// cumulative (subtree-sum) transform that drives every tree formula.

#include <utility>
#include <vector>

#include "rational.hpp"
#include "tree.hpp"

namespace kantor {

inline Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rational l1_norm(const std::vector<Rational>& v) {
    Rational s = 0;
    for (const Rational& q : v) s += abs(q);
    return s;
}

class ProbabilityFunction {
public:
    explicit ProbabilityFunction(std::vector<Rational> mass) : mass_(std::move(mass)) {
        if (mass_.empty()) throw ValidationError("empty probability function");
        for (const Rational& q : mass_)
            if (sgn(q) < 0) throw ValidationError("negative probability mass");
        if (sum(mass_) != 1) throw ValidationError("probability masses must sum to 1");
    }

    static ProbabilityFunction dirac(int n, int x) {
        std::vector<Rational> m(n, Rational(0));
        m[x] = 1;
        return ProbabilityFunction(std::move(m));
    }

    static ProbabilityFunction uniform(int n) {
        return ProbabilityFunction(std::vector<Rational>(n, make_rational(1, n)));
    }

    int size() const { return static_cast<int>(mass_.size()); }
    const Rational& operator()(int x) const { return mass_[x]; }
    const std::vector<Rational>& values() const { return mass_; }

private:
    std::vector<Rational> mass_;
};

// A signed mass vector summing to zero: the difference of two measures of
// equal total mass lives here, and every norm in the library is a norm on
// this space.
class ZeroMassVector {
public:
    explicit ZeroMassVector(std::vector<Rational> v) : v_(std::move(v)) {
        if (v_.empty()) throw ValidationError("empty mass vector");
        if (sgn(sum(v_)) != 0) throw ValidationError("mass vector does not sum to zero");
    }

    static ZeroMassVector zero(int n) { return ZeroMassVector(std::vector<Rational>(n, Rational(0))); }

    int size() const { return static_cast<int>(v_.size()); }
    const Rational& operator()(int x) const { return v_[x]; }
    const std::vector<Rational>& values() const { return v_; }

private:
    std::vector<Rational> v_;
};

inline ZeroMassVector zero_mass_from_pair(const ProbabilityFunction& mu,
                                          const ProbabilityFunction& nu) {
    if (mu.size() != nu.size()) throw ValidationError("measures live on different vertex sets");
    std::vector<Rational> v(mu.size());
    for (int x = 0; x < mu.size(); ++x) v[x] = mu(x) - nu(x);
    return ZeroMassVector(std::move(v));
}

struct ProbabilitySplit {
    ProbabilityFunction mu, nu;
    Rational scale;  // xi == scale * (mu - nu)
};

// Writes xi as a scaled difference of probability functions. The positive
// and negative parts are normalized by s = max(1, |xi|_1 / 2) and the
// leftover mass is spread uniformly on both sides, so mu - nu = xi / s.
inline ProbabilitySplit split_into_probabilities(const ZeroMassVector& xi) {
    const int n = xi.size();
    Rational s = l1_norm(xi.values()) / 2;
    if (s < 1) s = 1;
    std::vector<Rational> mu(n), nu(n);
    Rational pos_total = 0;
    for (int x = 0; x < n; ++x) {
        Rational scaled = xi(x) / s;
        mu[x] = positive_part(scaled);
        nu[x] = negative_part(scaled);
        pos_total += mu[x];
    }
    Rational pad = (Rational(1) - pos_total) / n;
    for (int x = 0; x < n; ++x) mu[x] += pad, nu[x] += pad;
    return {ProbabilityFunction(std::move(mu)), ProbabilityFunction(std::move(nu)), s};
}

// Subtree sums with respect to a rooted tree: entry x is the total mass of
// the subtree hanging at x. The root entry is the total mass, i.e. zero.
struct CumulativeVector {
    std::vector<Rational> values;
    int root;

    const Rational& operator()(int x) const { return values[x]; }
};

inline CumulativeVector cumulative(const RootedTree& t, const ZeroMassVector& xi) {
    if (xi.size() != t.n) throw ValidationError("mass vector does not match the tree");
    CumulativeVector c{xi.values(), t.root};
    for (auto it = t.order.rbegin(); it != t.order.rend(); ++it)  // children first
        if (*it != t.root) c.values[t.parent[*it]] += c.values[*it];
    return c;
}

struct CumulativeMatrix {
    // Inverse of (I - A), where A marks parent->child adjacency. Entry
    // (x, y) is 1 exactly when y belongs to the subtree at x, so applying
    // it to xi yields the subtree sums. Computed by Gauss-Jordan
    // elimination, independently of any tree traversal.
    std::vector<std::vector<Rational>> matrix;
    CumulativeVector cumulative;
};

inline CumulativeMatrix cumulative_via_matrix(const RootedTree& t, const ZeroMassVector& xi) {
    if (xi.size() != t.n) throw ValidationError("mass vector does not match the tree");
    const int n = t.n;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(2 * n, Rational(0)));
    for (int x = 0; x < n; ++x) {
        a[x][x] = 1;
        for (int y : t.children[x]) a[x][y] -= 1;
        a[x][n + x] = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int row = col; row < n; ++row)
            if (sgn(a[row][col]) != 0) {
                pivot = row;
                break;
            }
        if (pivot < 0) throw Error("singular cumulative system");  // cannot happen
        std::swap(a[col], a[pivot]);
        Rational lead = a[col][col];
        for (int j = 0; j < 2 * n; ++j) a[col][j] /= lead;
        for (int row = 0; row < n; ++row) {
            if (row == col || sgn(a[row][col]) == 0) continue;
            Rational f = a[row][col];
            for (int j = 0; j < 2 * n; ++j) a[row][j] -= f * a[col][j];
        }
    }
    CumulativeMatrix out;
    out.matrix.assign(n, std::vector<Rational>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out.matrix[x][y] = a[x][n + y];
    out.cumulative.root = t.root;
    out.cumulative.values.assign(n, Rational(0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) out.cumulative.values[x] += out.matrix[x][y] * xi(y);
    return out;
}

// Image of a mass vector under a vertex map q (index -> index).
inline std::vector<Rational> push_forward(const std::vector<int>& q, int target_size,
                                          const std::vector<Rational>& v) {
    std::vector<Rational> out(target_size, Rational(0));
    for (std::size_t x = 0; x < v.size(); ++x) {
        if (q[x] < 0 || q[x] >= target_size) throw ValidationError("map image out of range");
        out[q[x]] += v[x];
    }
    return out;
}

struct CouplingEntry {
    int x, y;
    Rational mass;
};

// A transport plan with declared margins. Construction checks shape and
// positivity only; whether the margins really match is a separate question
// answered by verify_coupling, so that externally supplied plans can be
// represented and then judged.
class Coupling {
public:
    Coupling(ProbabilityFunction mu, ProbabilityFunction nu, std::vector<CouplingEntry> entries)
        : mu_(std::move(mu)), nu_(std::move(nu)), entries_(std::move(entries)) {
        if (mu_.size() != nu_.size()) throw ValidationError("coupling margins differ in size");
        std::erase_if(entries_, [](const CouplingEntry& e) { return sgn(e.mass) == 0; });
        for (const CouplingEntry& e : entries_) {
            if (e.x < 0 || e.x >= mu_.size() || e.y < 0 || e.y >= mu_.size())
                throw ValidationError("coupling entry out of range");
            if (sgn(e.mass) < 0) throw ValidationError("negative coupling mass");
        }
        std::sort(entries_.begin(), entries_.end(), [](const CouplingEntry& a, const CouplingEntry& b) {
            return std::pair(a.x, a.y) < std::pair(b.x, b.y);
        });
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (entries_[i - 1].x == entries_[i].x && entries_[i - 1].y == entries_[i].y)
                throw ValidationError("duplicate coupling entry");
    }

    int size() const { return mu_.size(); }
    const ProbabilityFunction& mu() const { return mu_; }
    const ProbabilityFunction& nu() const { return nu_; }
    const std::vector<CouplingEntry>& entries() const { return entries_; }

    Rational mass(int x, int y) const {
        for (const CouplingEntry& e : entries_)
            if (e.x == x && e.y == y) return e.mass;
        return 0;
    }

    std::vector<Rational> row_sums() const {
        std::vector<Rational> r(size(), Rational(0));
        for (const CouplingEntry& e : entries_) r[e.x] += e.mass;
        return r;
    }

    std::vector<Rational> column_sums() const {
        std::vector<Rational> c(size(), Rational(0));
        for (const CouplingEntry& e : entries_) c[e.y] += e.mass;
        return c;
    }

private:
    ProbabilityFunction mu_, nu_;
    std::vector<CouplingEntry> entries_;
};

}  // namespace kantor
