#pragma once

// End-to-end decision procedure for the action of a symplectomorphism on the
// degree-2 Chow group, phrased entirely on the Neron-Severi lattice: verify
// the input is an isometry acting trivially on the discriminant group (the
// symplectomorphism condition, since the discriminant groups of NS and of the
// transcendental lattice are identified), extend by the identity to the Mukai
// lattice, check the Weyl membership hypotheses there, and conclude through
// the spinor norm and discriminant action. A negative membership answer is
// never reported as a nontrivial Chow action; it only means this route fails.

#include "k3lat/bv.hpp"
#include "k3lat/kneser.hpp"

namespace k3lat {

enum class Theorem5Conclusion {
    TRIVIAL_ON_CH2,
    CRITERION_INAPPLICABLE,
    NOT_SYMPLECTOMORPHISM_LIKE,
    ANOMALY,  // spinor -1 with orientation +1: provably impossible for
              // genuine inputs, so reaching it flags an input/implementation error
};

inline const char* to_string(Theorem5Conclusion c) {
    switch (c) {
        case Theorem5Conclusion::TRIVIAL_ON_CH2: return "TRIVIAL_ON_CH2";
        case Theorem5Conclusion::CRITERION_INAPPLICABLE: return "CRITERION_INAPPLICABLE";
        case Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE: return "NOT_SYMPLECTOMORPHISM_LIKE";
        case Theorem5Conclusion::ANOMALY: return "ANOMALY";
    }
    return "?";
}

inline int exit_code_for(Theorem5Conclusion c) {
    switch (c) {
        case Theorem5Conclusion::TRIVIAL_ON_CH2: return 0;
        case Theorem5Conclusion::CRITERION_INAPPLICABLE: return 3;
        case Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE:
        case Theorem5Conclusion::ANOMALY: return 4;
    }
    return 2;
}

struct Theorem5Options {
    long enum_bound = 10;
    unsigned long long factor_budget = 10000;
    std::optional<Vec> ample;
};

struct Theorem5Report {
    bool input_valid = false;
    bool ns_hyperbolic = false;  // signature (1, rank-1); reported, not enforced
    bool disc_trivial_on_ns = false;
    KneserReport hypotheses;  // for the extended lattice
    int det = +1;
    int spinor = +1;
    std::optional<int> orientation;  // only when an ample class is supplied
    bool is_weyl_member = false;
    std::optional<std::vector<MukaiVector>> factorization;  // spherical-twist classes
    bool budget_exhausted = false;
    Theorem5Conclusion conclusion = Theorem5Conclusion::CRITERION_INAPPLICABLE;
};

// Throws std::invalid_argument on inputs that cannot be analyzed at all
// (odd or degenerate lattice, matrix not an isometry, bad ample class);
// the CLI maps that to its malformed-input exit code.
inline Theorem5Report run_theorem5(const IntegerLattice& ns, const IMat& f,
                                   const Theorem5Options& opts = {}) {
    if (!ns.is_even()) throw std::invalid_argument("NS lattice must be even");
    if (!ns.is_nondegenerate()) throw std::invalid_argument("NS lattice must be nondegenerate");

    Theorem5Report rep;
    rep.ns_hyperbolic = is_hyperbolic_signature(ns);
    const Isometry g0 = verify_isometry(ns, f);
    rep.input_valid = true;

    rep.disc_trivial_on_ns = acts_trivially_on_discriminant(g0);

    const Isometry g = extend_isometry_by_identity(g0);
    const IntegerLattice& ext = g.lattice;

    rep.hypotheses = check_kneser_hypotheses(ext, opts.enum_bound);
    // adding the hyperbolic summand raises both p-ranks by exactly two
    for (const Int p : {Int(2), Int(3)})
        if (p_rank(ext, p) != p_rank(ns, p) + 2)
            throw std::logic_error("p-rank bookkeeping violated for the extended lattice");

    rep.det = determinant(g) > 0 ? +1 : -1;
    rep.spinor = spinor_norm(g);
    if (opts.ample) {
        K3LatticeData data{ns, opts.ample, std::nullopt};
        if (norm(ns, *opts.ample) <= 0)
            throw std::invalid_argument("ample class must have positive self-intersection");
        const auto plane = default_positive_plane(data);
        rep.orientation = orientation_sign(g, {plane.first, plane.second});
    }

    const bool disc_trivial_ext = acts_trivially_on_discriminant(g);
    rep.is_weyl_member =
        rep.hypotheses.hypotheses_met && rep.spinor == +1 && disc_trivial_ext;

    if (rep.is_weyl_member) {
        FactorSearchResult f2 =
            factor_into_minus_two_reflections(g, opts.enum_bound, opts.factor_budget);
        rep.budget_exhausted = f2.budget_exhausted;
        if (f2.word) {
            std::vector<MukaiVector> letters;
            letters.reserve(f2.word->size());
            for (const Vec& d : *f2.word) letters.push_back(mukai_from_coords(d));
            rep.factorization = std::move(letters);
        }
    }

    if (!rep.disc_trivial_on_ns) {
        rep.conclusion = Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE;
    } else if (!rep.hypotheses.hypotheses_met) {
        rep.conclusion = Theorem5Conclusion::CRITERION_INAPPLICABLE;
    } else if (rep.is_weyl_member) {
        rep.conclusion = Theorem5Conclusion::TRIVIAL_ON_CH2;
    } else if (rep.orientation && *rep.orientation == +1) {
        rep.conclusion = Theorem5Conclusion::ANOMALY;
    } else {
        rep.conclusion = Theorem5Conclusion::NOT_SYMPLECTOMORPHISM_LIKE;
    }
    return rep;
}

}  // namespace k3lat
