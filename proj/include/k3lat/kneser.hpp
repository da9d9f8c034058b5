#pragma once

// The arithmetic hypotheses and membership law for the Weyl group of an even
// nondegenerate lattice: Witt index, p-ranks, representing -2, and the
// characterization of W as the kernel of (spinor norm, discriminant action)
// on the orthogonal group. Only the rk_2 >= 6 / rk_3 >= 5 sufficient
// conditions are checked; the refined excluded-form classification is out of
// scope, so lattices failing them are reported inapplicable, nothing more.

#include "k3lat/discriminant.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/isometry.hpp"

namespace k3lat {

inline int witt_index(const IntegerLattice& lat) {
    if (!lat.is_nondegenerate())
        throw std::invalid_argument("Witt index needs a nondegenerate lattice");
    const Signature s = signature(lat);
    return std::min(s.positive, s.negative);
}

// Maximal rank of a sublattice with discriminant prime to p, computed as the
// rank of the Gram matrix over F_p: a nonsingular r x r minor mod p spans a
// sublattice with discriminant prime to p, and any such sublattice forces
// mod-p rank at least its rank.
inline int p_rank(const IntegerLattice& lat, const Int& p) {
    if (!is_prime(p)) throw std::invalid_argument("p_rank needs a prime modulus");
    return rank_mod_p(lat.gram(), p);
}

// First (-2)-vector in the coordinate box, lexicographically. A visible
// hyperbolic-plane block short-circuits the search with its canonical
// witness.
inline std::optional<Vec> find_minus_two_vector(const IntegerLattice& lat, long bound) {
    if (auto w = u_block_minus_two_witness(lat)) return w;
    std::optional<Vec> found;
    enumerate_vectors_of_norm_stream(lat, Int(-2), bound, [&](const Vec& v) {
        found = v;
        return false;
    });
    return found;
}

struct KneserReport {
    int witt_index = 0;
    int rk2 = 0;
    int rk3 = 0;
    std::optional<Vec> minus_two_witness;
    bool hypotheses_met = false;
    std::vector<std::string> failures;
};

inline KneserReport check_kneser_hypotheses(const IntegerLattice& lat, long bound) {
    if (!lat.is_even())
        throw std::invalid_argument("Kneser hypotheses apply to even lattices");
    if (!lat.is_nondegenerate())
        throw std::invalid_argument("Kneser hypotheses apply to nondegenerate lattices");
    KneserReport r;
    r.witt_index = witt_index(lat);
    r.rk2 = p_rank(lat, 2);
    r.rk3 = p_rank(lat, 3);
    r.minus_two_witness = find_minus_two_vector(lat, bound);
    if (r.witt_index < 2) r.failures.push_back("witt_index");
    if (r.rk2 < 6) r.failures.push_back("rk2");
    if (r.rk3 < 5) r.failures.push_back("rk3");
    if (!r.minus_two_witness) r.failures.push_back("minus_two_witness");
    r.hypotheses_met = r.failures.empty();
    return r;
}

struct FactorSearchResult {
    std::optional<std::vector<Vec>> word;  // norm -2 letters, composing left to right
    bool budget_exhausted = false;
};

// Best-effort greedy factorization into (-2)-reflections. The candidate pool
// is the per-block in-box enumeration; each step picks the letter whose
// reflection most decreases the L1 displacement from the identity (strict
// decreases only, lexicographically smallest letter on ties since the pool
// is sorted). Absence of a word is NOT evidence of non-membership.
inline FactorSearchResult factor_into_minus_two_reflections(const Isometry& a, long bound,
                                                            unsigned long long budget) {
    if (!a.lattice.is_even() || !a.lattice.is_nondegenerate())
        throw std::invalid_argument("factorization needs an even nondegenerate lattice");
    const int n = a.lattice.rank();
    const IMat& g = a.lattice.gram();
    const IMat id = IMat::identity(n);

    auto score = [&](const IMat& m) {
        Int s(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) s += abs(m(i, j) - id(i, j));
        return s;
    };
    // s_delta * m as a rank-one update: row_i += delta_i * ((G delta)^T m)_j
    auto reflect_left = [&](const Vec& delta, const IMat& m) {
        Vec gd(n, Int(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) gd[i] += g(i, j) * delta[j];
        Vec row(n, Int(0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) row[j] += gd[i] * m(i, j);
        IMat out = m;
        for (int i = 0; i < n; ++i) {
            if (delta[i] == 0) continue;
            for (int j = 0; j < n; ++j) out(i, j) += delta[i] * row[j];
        }
        return out;
    };

    IMat cur = a.matrix;
    std::vector<Vec> word;
    if (cur == id) return {std::move(word), false};

    const std::vector<Vec> pool = minus_two_pool(a.lattice, bound);
    unsigned long long evals = 0;
    Int cur_score = score(cur);
    while (true) {
        const Vec* best = nullptr;
        IMat best_m;
        Int best_score = cur_score;
        for (const Vec& delta : pool) {
            if (++evals > budget) return {std::nullopt, true};
            IMat cand = reflect_left(delta, cur);
            Int s = score(cand);
            if (s == 0) {
                word.push_back(delta);
                return {std::move(word), false};
            }
            if (s < best_score) {
                best = &delta;
                best_m = std::move(cand);
                best_score = s;
            }
        }
        if (!best) return {std::nullopt, true};  // stalled
        word.push_back(*best);
        cur = std::move(best_m);
        cur_score = best_score;
    }
}

struct WeylMembership {
    bool applicable = false;
    int spinor = +1;
    bool discriminant_trivial = false;
    bool is_member = false;  // asserted only when applicable
    std::optional<std::vector<Vec>> factorization;
    bool budget_exhausted = false;
};

// Membership test for the Weyl group as the kernel of
// O(L) -> {+-1} x O(L*/L), (spinor norm, discriminant action).
// Determinant is unconstrained; word parity is recorded by the factorization
// length when one is found, never enforced.
inline WeylMembership weyl_group_membership(const Isometry& a, long bound,
                                            unsigned long long factor_budget) {
    if (!a.lattice.is_even() || !a.lattice.is_nondegenerate())
        throw std::invalid_argument("Weyl membership needs an even nondegenerate lattice");
    WeylMembership w;
    const KneserReport hyp = check_kneser_hypotheses(a.lattice, bound);
    w.applicable = hyp.hypotheses_met;
    w.spinor = spinor_norm(a);
    w.discriminant_trivial = acts_trivially_on_discriminant(a);
    if (!w.applicable) return w;
    w.is_member = (w.spinor == +1) && w.discriminant_trivial;
    if (w.is_member) {
        FactorSearchResult f = factor_into_minus_two_reflections(a, bound, factor_budget);
        w.factorization = std::move(f.word);
        w.budget_exhausted = f.budget_exhausted;
    }
    return w;
}

}  // namespace k3lat
