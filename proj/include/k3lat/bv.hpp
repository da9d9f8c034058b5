#pragma once

// The canonical subring R = Z + NS + Z c of the Chow ring of a K3 surface,
// modeled through the cycle-map bijection with the extended Neron-Severi
// lattice. Degree-2 classes are integer multiples of the canonical degree-one
// class c; the product rule is forced by c_1(L)^2 = (l.l) c.

#include "k3lat/k3.hpp"

namespace k3lat {

struct BVClass {
    Int a;   // degree 0
    Vec l;   // degree 1, a divisor class in NS
    Int m;   // degree 2, coefficient of the canonical class c

    bool operator==(const BVClass& o) const { return a == o.a && l == o.l && m == o.m; }
};

inline void check_class(const IntegerLattice& ns, const BVClass& u) { check_vector(ns, u.l); }

inline BVClass bv_add(const IntegerLattice& ns, const BVClass& u, const BVClass& v) {
    check_class(ns, u);
    check_class(ns, v);
    BVClass out{u.a + v.a, Vec(ns.rank()), u.m + v.m};
    for (int i = 0; i < ns.rank(); ++i) out.l[i] = u.l[i] + v.l[i];
    return out;
}

// (a,l,m).(a',l',m') = (aa', a l' + a' l, a m' + a' m + (l.l')); commutative,
// associative, unit (1,0,0); products of positive degrees beyond 2 vanish.
inline BVClass bv_mul(const IntegerLattice& ns, const BVClass& u, const BVClass& v) {
    check_class(ns, u);
    check_class(ns, v);
    BVClass out{u.a * v.a, Vec(ns.rank()), u.a * v.m + v.a * u.m + pairing(ns, u.l, v.l)};
    for (int i = 0; i < ns.rank(); ++i) out.l[i] = u.a * v.l[i] + v.a * u.l[i];
    return out;
}

inline BVClass bv_one(const IntegerLattice& ns) { return BVClass{Int(1), Vec(ns.rank()), Int(0)}; }

inline BVClass bv_canonical_class(const IntegerLattice& ns) {
    return BVClass{Int(0), Vec(ns.rank()), Int(1)};
}

// Chow-valued Mukai vector of a line bundle: (1, l, l^2/2 + 1). Equals
// 1 + l + l^2/2 multiplied by the square root of the Todd class, 1 + c.
inline BVClass vch_line_bundle(const IntegerLattice& ns, const Vec& l) {
    const Int n = norm(ns, l);
    if (n % 2 != 0) throw std::invalid_argument("line bundle class must have even square");
    return BVClass{Int(1), l, n / 2 + 1};
}

inline BVClass c2_class(const IntegerLattice& ns) {
    return BVClass{Int(0), Vec(ns.rank()), Int(24)};
}

// The cycle map is the additive bijection (a,l,m) -> (a,l,m) with the Mukai
// lattice; it identifies R with the extended Neron-Severi group.
inline MukaiVector cycle_class(const BVClass& u) { return MukaiVector{u.a, u.l, u.m}; }

inline BVClass bv_from_cycle(const MukaiVector& v) { return BVClass{v.r, v.l, v.s}; }

// Transfer of an isometry of the extended lattice to R through the cycle
// map: an additive automorphism, not a ring map in general.
struct BVAction {
    Isometry g;  // isometry of extended_ns(ns)

    BVClass apply(const BVClass& u) const {
        const Vec img = g.matrix.apply(extended_coords(cycle_class(u)));
        return bv_from_cycle(mukai_from_coords(img));
    }
};

inline BVAction induced_action_on_R(const Isometry& g) { return BVAction{g}; }

}  // namespace k3lat
