#pragma once

// Bounded vector enumeration: all lattice vectors with every coordinate in
// [-bound, bound] and prescribed norm, in lexicographic order. The search is
// a depth-first scan of the coordinate box; subtrees are skipped only when
// the target norm is provably unreachable there, so the result equals the
// plain box scan. Block-diagonal Gram structure is exploited by the pool
// builders, not by the scan itself.

#include "k3lat/lattice.hpp"

#include <numeric>
#include <optional>

namespace k3lat {

namespace detail {

class NormBoxSearch {
public:
    NormBoxSearch(const IntegerLattice& lat, Int target, long bound)
        : g_(lat.gram()), n_(lat.rank()), bound_(bound), target_(std::move(target)) {
        if (bound < 1) throw std::invalid_argument("enumeration bound must be >= 1");
        precompute();
    }

    void set_node_budget(unsigned long long budget) { node_budget_ = budget; }

    // visit(const Vec&) -> bool; false stops the search.
    // Returns true iff the whole box was covered (no early stop, no budget hit).
    template <typename Visitor>
    bool run(Visitor&& visit) {
        x_.assign(n_, Int(0));
        lin_.assign(n_, Int(0));
        partial_ = 0;
        nodes_ = 0;
        stopped_ = false;
        budget_hit_ = false;
        dfs(0, visit);
        return !stopped_ && !budget_hit_;
    }

    unsigned long long nodes_visited() const { return nodes_; }

private:
    void precompute() {
        const Int b2 = Int(bound_) * bound_;
        cross_abs_.assign(n_ + 1, Int(0));
        diag_lo_.assign(n_ + 1, Int(0));
        diag_hi_.assign(n_ + 1, Int(0));
        for (int k = n_ - 1; k >= 0; --k) {
            cross_abs_[k] = cross_abs_[k + 1];
            for (int j = k + 1; j < n_; ++j)
                cross_abs_[k] += 2 * abs(g_(k, j)) * b2;
            diag_lo_[k] = diag_lo_[k + 1];
            diag_hi_[k] = diag_hi_[k + 1];
            const Int d = g_(k, k) * b2;
            if (d < 0) diag_lo_[k] += d; else diag_hi_[k] += d;
        }
        // Definiteness of each trailing block, plus its integer adjugate
        // where definite: gives the unconstrained critical-point bound on the
        // remaining contribution (Fincke-Pohst style completion of squares)
        // with integer arithmetic only.
        trailing_kind_.assign(n_ + 1, 0);
        trailing_adj_.assign(n_ + 1, IMat());
        trailing_det_.assign(n_ + 1, Int(0));
        for (int k = 0; k < n_; ++k) {
            const int m = n_ - k;
            IMat block(m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) block(i, j) = g_(k + i, k + j);
            const Diagonalization d = symmetric_diagonalize(to_rational(block));
            int pos = 0, neg = 0, nul = 0;
            for (const Rat& di : d.diag) {
                if (di > 0) ++pos; else if (di < 0) ++neg; else ++nul;
            }
            if (nul == 0 && neg == 0) trailing_kind_[k] = 1;
            else if (nul == 0 && pos == 0) trailing_kind_[k] = -1;
            if (trailing_kind_[k] != 0) {
                const Int det = determinant(block);
                QMat adj = inverse(to_rational(block));
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) adj(i, j) *= Rat(det);
                trailing_adj_[k] = to_integral(adj);
                trailing_det_[k] = det;
            }
        }
    }

    // Remaining contribution over the box is provably outside the target gap.
    bool prunable(int k) const {
        if (k == n_) return false;
        const Int need = target_ - partial_;
        Int linabs(0);
        for (int i = k; i < n_; ++i) linabs += abs(lin_[i]) * bound_;
        if (need < diag_lo_[k] - linabs - cross_abs_[k]) return true;
        if (need > diag_hi_[k] + linabs + cross_abs_[k]) return true;
        if (trailing_kind_[k] != 0) {
            // critical value of L.x + x^T T x over R^m is -(1/4) L^T T^{-1} L
            // = -S/D with S = L^T adj(T) L and D = 4 det(T); compare
            // need <> -S/D by cross-multiplication to stay in integers
            const IMat& adj = trailing_adj_[k];
            const int m = n_ - k;
            Int s(0);
            for (int i = 0; i < m; ++i) {
                if (lin_[k + i] == 0) continue;
                Int row(0);
                for (int j = 0; j < m; ++j) row += adj(i, j) * lin_[k + j];
                s += lin_[k + i] * row;
            }
            const Int lhs = (need * 4 * trailing_det_[k] + s) *
                            (trailing_det_[k] > 0 ? 1 : -1);
            if (trailing_kind_[k] < 0 && lhs > 0) return true;   // need above the max
            if (trailing_kind_[k] > 0 && lhs < 0) return true;   // need below the min
        }
        return false;
    }

    template <typename Visitor>
    void dfs(int k, Visitor&& visit) {
        if (stopped_ || budget_hit_) return;
        if (k == n_) {
            if (partial_ == target_) {
                if (!visit(static_cast<const Vec&>(x_))) stopped_ = true;
            }
            return;
        }
        for (long v = -bound_; v <= bound_; ++v) {
            if (node_budget_ && ++nodes_ > node_budget_) { budget_hit_ = true; return; }
            const Int vi(v);
            const Int delta = g_(k, k) * vi * vi + lin_[k] * vi;
            x_[k] = vi;
            partial_ += delta;
            if (v != 0)
                for (int i = k + 1; i < n_; ++i) lin_[i] += 2 * g_(k, i) * vi;
            if (!prunable(k + 1)) dfs(k + 1, visit);
            if (v != 0)
                for (int i = k + 1; i < n_; ++i) lin_[i] -= 2 * g_(k, i) * vi;
            partial_ -= delta;
            if (stopped_ || budget_hit_) { x_[k] = 0; return; }
        }
        x_[k] = 0;
    }

    IMat g_;
    int n_;
    long bound_;
    Int target_;
    std::vector<Int> cross_abs_, diag_lo_, diag_hi_;
    std::vector<int> trailing_kind_;
    std::vector<IMat> trailing_adj_;
    std::vector<Int> trailing_det_;
    Vec x_;
    std::vector<Int> lin_;  // lin_[i] = 2 * sum_{m<k} g(m,i) x_m
    Int partial_;
    unsigned long long nodes_ = 0, node_budget_ = 0;
    bool stopped_ = false, budget_hit_ = false;
};

}  // namespace detail

// Streaming enumeration in lexicographic order; visitor returns false to stop.
// Returns true iff the box was fully covered.
template <typename Visitor>
bool enumerate_vectors_of_norm_stream(const IntegerLattice& lat, const Int& target, long bound,
                                      Visitor&& visit) {
    detail::NormBoxSearch search(lat, target, bound);
    return search.run(std::forward<Visitor>(visit));
}

inline std::vector<Vec> enumerate_vectors_of_norm(const IntegerLattice& lat, const Int& target,
                                                  long bound) {
    std::vector<Vec> out;
    enumerate_vectors_of_norm_stream(lat, target, bound, [&](const Vec& v) {
        out.push_back(v);
        return true;
    });
    return out;
}

// Connected components of the Gram sparsity graph, each sorted, ordered by
// smallest member. A direct sum decomposes into its blocks this way.
inline std::vector<std::vector<int>> gram_components(const IntegerLattice& lat) {
    const int n = lat.rank();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s}, members;
        comp[s] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (int j = 0; j < n; ++j)
                if (j != i && comp[j] < 0 && lat.gram()(i, j) != 0) {
                    comp[j] = comp[s];
                    stack.push_back(j);
                }
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

inline IntegerLattice sublattice_on(const IntegerLattice& lat, const std::vector<int>& idx) {
    const int m = static_cast<int>(idx.size());
    IMat g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(i, j) = lat.gram()(idx[i], idx[j]);
    return IntegerLattice(std::move(g));
}

inline Vec embed_on(int rank, const std::vector<int>& idx, const Vec& block) {
    Vec out(rank, Int(0));
    for (std::size_t i = 0; i < idx.size(); ++i) out[idx[i]] = block[i];
    return out;
}

// A hyperbolic-plane block in the Gram matrix: a rank-2 component with zero
// diagonal and pairing +-1. Returns its canonical (-2)-witness if present.
inline std::optional<Vec> u_block_minus_two_witness(const IntegerLattice& lat) {
    for (const auto& c : gram_components(lat)) {
        if (c.size() != 2) continue;
        const int i = c[0], j = c[1];
        if (lat.gram()(i, i) != 0 || lat.gram()(j, j) != 0) continue;
        const Int& p = lat.gram()(i, j);
        if (p != 1 && p != -1) continue;
        Vec w(lat.rank(), Int(0));
        w[i] = 1;
        w[j] = (p == 1) ? Int(-1) : Int(1);  // norm 2*p*w_i*w_j = -2 either way
        return w;
    }
    return std::nullopt;
}

// Pool of (-2)-vectors used by reflection-word searches: the complete in-box
// set of each Gram block, embedded. Mixed-block vectors (nonzero in two or
// more blocks) are not generated; word searches stay best-effort regardless.
// Deterministic: lexicographically sorted; when capped, exactly the vectors
// with the smallest max-coordinate survive (ties lexicographic), selected by
// streaming compaction so the buffer never exceeds a few multiples of cap.
inline std::vector<Vec> minus_two_pool(const IntegerLattice& lat, long bound,
                                       std::size_t cap = 100000) {
    auto linf = [](const Vec& v) {
        Int m(0);
        for (const Int& x : v) {
            Int a = abs(x);
            if (a > m) m = std::move(a);
        }
        return m;
    };
    auto smaller = [&](const Vec& a, const Vec& b) {
        const Int la = linf(a), lb = linf(b);
        if (la != lb) return la < lb;
        return a < b;
    };
    std::vector<Vec> pool;
    auto compact = [&] {
        if (pool.size() <= cap * 4) return;
        std::sort(pool.begin(), pool.end(), smaller);
        pool.resize(cap);
    };
    for (const auto& c : gram_components(lat)) {
        const IntegerLattice block = sublattice_on(lat, c);
        detail::NormBoxSearch search(block, Int(-2), bound);
        search.set_node_budget(50'000'000ULL);
        search.run([&](const Vec& v) {
            pool.push_back(embed_on(lat.rank(), c, v));
            compact();
            return true;
        });
    }
    if (pool.size() > cap) {
        std::sort(pool.begin(), pool.end(), smaller);
        pool.resize(cap);
    }
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace k3lat
