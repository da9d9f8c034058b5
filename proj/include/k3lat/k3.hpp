#pragma once

// K3-specific structure over a Neron-Severi lattice: the extended (Mukai)
// lattice NS + U with the sign-changed pairing between the rank-0 and rank-4
// slots, Mukai vectors of line bundles and curve sheaves, spherical twist
// actions, Kahler chamber tests, and the positive-plane orientation data.
//
// Basis convention for the extended lattice: (e_0, ns basis..., e_inf), with
// (r,l,s).(r',l',s') = (l.l') - r s' - s r'.

#include "k3lat/enumerate.hpp"
#include "k3lat/isometry.hpp"

#include <utility>

namespace k3lat {

struct K3LatticeData {
    IntegerLattice ns;
    std::optional<Vec> ample;
    std::optional<std::vector<Vec>> curve_classes;
};

inline bool is_hyperbolic_signature(const IntegerLattice& ns) {
    const Signature s = signature(ns);
    return s.positive == 1 && s.null == 0 && s.negative == ns.rank() - 1;
}

inline void validate_k3(const K3LatticeData& data) {
    if (!data.ns.is_even()) throw std::invalid_argument("NS lattice must be even");
    if (!is_hyperbolic_signature(data.ns))
        throw std::invalid_argument("NS lattice must have signature (1, rank-1)");
    if (data.curve_classes)
        for (const Vec& c : *data.curve_classes)
            if (norm(data.ns, c) != -2)
                throw std::invalid_argument("curve classes must have self-intersection -2");
    if (data.ample) {
        if (norm(data.ns, *data.ample) <= 0)
            throw std::invalid_argument("ample class must have positive self-intersection");
        if (data.curve_classes)
            for (const Vec& c : *data.curve_classes)
                if (pairing(data.ns, *data.ample, c) <= 0)
                    throw std::invalid_argument("ample class must pair positively with every curve class");
    }
}

struct MukaiVector {
    Int r;
    Vec l;
    Int s;

    bool operator==(const MukaiVector& o) const { return r == o.r && l == o.l && s == o.s; }
};

inline IntegerLattice extended_ns(const IntegerLattice& ns) {
    const int n = ns.rank();
    IMat g(n + 2, n + 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(1 + i, 1 + j) = ns.gram()(i, j);
    g(0, n + 1) = -1;
    g(n + 1, 0) = -1;
    return IntegerLattice(std::move(g));
}

inline Vec extended_coords(const MukaiVector& v) {
    Vec out;
    out.reserve(v.l.size() + 2);
    out.push_back(v.r);
    out.insert(out.end(), v.l.begin(), v.l.end());
    out.push_back(v.s);
    return out;
}

inline MukaiVector mukai_from_coords(const Vec& x) {
    if (x.size() < 2) throw std::invalid_argument("extended coordinates need length >= 2");
    return MukaiVector{x.front(), Vec(x.begin() + 1, x.end() - 1), x.back()};
}

inline Int mukai_pairing(const IntegerLattice& ns, const MukaiVector& v, const MukaiVector& w) {
    check_vector(ns, v.l);
    check_vector(ns, w.l);
    return pairing(ns, v.l, w.l) - v.r * w.s - v.s * w.r;
}

inline Int mukai_square(const IntegerLattice& ns, const MukaiVector& v) {
    return mukai_pairing(ns, v, v);
}

// v(L) = (1, l, l^2/2 + 1); always of Mukai square -2.
inline MukaiVector mukai_vector_of_line_bundle(const IntegerLattice& ns, const Vec& l) {
    const Int n = norm(ns, l);
    if (n % 2 != 0) throw std::invalid_argument("line bundle class must have even square");
    return MukaiVector{Int(1), l, n / 2 + 1};
}

// v(O_C(i)) = (0, [C], i+1) for a smooth rational curve class.
inline MukaiVector mukai_vector_of_curve_sheaf(const IntegerLattice& ns, const Vec& c,
                                               const Int& i) {
    if (norm(ns, c) != -2)
        throw std::invalid_argument("curve class must have self-intersection -2");
    return MukaiVector{Int(0), c, i + 1};
}

// The reflection s_{v} on the extended lattice for a Mukai vector of square
// -2: the cohomological action of the corresponding spherical twist.
inline Isometry spherical_twist_action(const IntegerLattice& ns, const MukaiVector& v) {
    if (mukai_square(ns, v) != -2)
        throw std::invalid_argument("spherical twist needs a Mukai vector of square -2");
    return reflection_isometry(extended_ns(ns), extended_coords(v));
}

inline Isometry extend_isometry_by_identity(const Isometry& g) {
    const int n = g.lattice.rank();
    IMat m(n + 2, n + 2);
    m(0, 0) = 1;
    m(n + 1, n + 1) = 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(1 + i, 1 + j) = g.matrix(i, j);
    return verify_isometry(extended_ns(g.lattice), m);
}

inline bool is_kahler_class(const K3LatticeData& data, const Vec& alpha) {
    if (!data.ample || !data.curve_classes)
        throw std::invalid_argument("Kahler test needs an ample class and curve classes");
    if (norm(data.ns, alpha) <= 0) return false;
    if (pairing(data.ns, alpha, *data.ample) <= 0) return false;
    for (const Vec& c : *data.curve_classes)
        if (pairing(data.ns, alpha, c) <= 0) return false;
    return true;
}

struct ChamberWalk {
    Vec result;
    std::vector<Vec> word;  // the curve classes reflected in, in order
    bool exhausted = false;
};

// Repeatedly reflect alpha into the chamber cut out by the supplied curve
// classes: while some C has (alpha.C) < 0, replace alpha by s_C(alpha),
// smallest index first. Answers are relative to the supplied roots.
inline ChamberWalk chamber_normalize(const K3LatticeData& data, const Vec& alpha0,
                                     unsigned long max_steps) {
    if (!data.ample || !data.curve_classes)
        throw std::invalid_argument("chamber walk needs an ample class and curve classes");
    if (norm(data.ns, alpha0) <= 0 || pairing(data.ns, alpha0, *data.ample) <= 0)
        throw std::invalid_argument("class is outside the positive component");
    ChamberWalk walk{alpha0, {}, false};
    for (unsigned long step = 0; step < max_steps; ++step) {
        const Vec* wall = nullptr;
        Int pr;
        for (const Vec& c : *data.curve_classes) {
            pr = pairing(data.ns, walk.result, c);
            if (pr < 0) { wall = &c; break; }
        }
        if (!wall) return walk;
        // s_C(alpha) = alpha + (alpha.C) C
        for (int i = 0; i < data.ns.rank(); ++i) walk.result[i] += pr * (*wall)[i];
        walk.word.push_back(*wall);
    }
    for (const Vec& c : *data.curve_classes)
        if (pairing(data.ns, walk.result, c) < 0) { walk.exhausted = true; break; }
    return walk;
}

struct P0Verdict {
    bool inside = false;
    bool plane_positive = false;
    std::optional<MukaiVector> witness;  // a (-2)-class orthogonal to the plane
    long bound_used = 0;
};

// Membership of the plane spanned by x, y in the root-free locus of the
// period domain: the 2x2 Gram must be positive definite and no (-2)-class
// within the coordinate box may be orthogonal to both. Completeness holds
// only within the box, as recorded by bound_used.
inline P0Verdict p0_membership(const IntegerLattice& ns, const QVec& x, const QVec& y,
                               long bound) {
    const IntegerLattice ext = extended_ns(ns);
    check_vector(ext, x);
    check_vector(ext, y);
    P0Verdict verdict;
    verdict.bound_used = bound;
    const Rat xx = norm(ext, x), yy = norm(ext, y), xy = pairing(ext, x, y);
    verdict.plane_positive = xx > 0 && xx * yy - xy * xy > 0;
    if (!verdict.plane_positive) return verdict;

    std::optional<Vec> found;
    enumerate_vectors_of_norm_stream(ext, Int(-2), bound, [&](const Vec& d) {
        const QVec dq = to_rational(d);
        if (pairing(ext, dq, x) == 0 && pairing(ext, dq, y) == 0) {
            found = d;
            return false;
        }
        return true;
    });
    if (found) {
        // report the witness with positive leading coordinate; +-d cut the
        // same hyperplane
        for (Int& c : *found) {
            if (c == 0) continue;
            if (c < 0)
                for (Int& e : *found) e = -e;
            break;
        }
        verdict.witness = mukai_from_coords(*found);
        verdict.inside = false;
    } else {
        verdict.inside = true;
    }
    return verdict;
}

// The algebraic half of the positive 4-space: {(0, w, 0), (1, 0, -(w.w)/2)}
// for an ample class w. Both have positive Mukai square and are mutually
// orthogonal. Every isometry in scope acts as the identity on the
// transcendental half, so orientation bookkeeping on this 2-plane equals the
// bookkeeping on the full 4-space.
inline std::pair<QVec, QVec> default_positive_plane(const K3LatticeData& data) {
    if (!data.ample) throw std::invalid_argument("positive plane needs an ample class");
    const Int w2 = norm(data.ns, *data.ample);
    if (w2 <= 0 || w2 % 2 != 0)
        throw std::invalid_argument("ample class must have positive even square");
    const int n = data.ns.rank();
    QVec first(n + 2, Rat(0)), second(n + 2, Rat(0));
    for (int i = 0; i < n; ++i) first[1 + i] = Rat((*data.ample)[i]);
    second[0] = 1;
    second[n + 1] = Rat(-w2 / 2);
    return {first, second};
}

}  // namespace k3lat
