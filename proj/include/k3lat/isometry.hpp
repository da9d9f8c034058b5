#pragma once

// Isometries of a fixed lattice. Convention used everywhere: column vectors,
// action v -> M v, isometry condition M^T G M = G.
//
// Spinor norm convention: a reflection in a vector v contributes the sign of
// -(v,v)/2, so reflections in negative-norm vectors (in particular all
// (-2)-reflections) are trivial. The literature has both conventions; this
// one makes the Weyl group land in the kernel.

#include "k3lat/lattice.hpp"
#include "k3lat/smith.hpp"

#include <optional>
#include <sstream>

namespace k3lat {

struct Isometry {
    IntegerLattice lattice;
    IMat matrix;
};

inline Isometry verify_isometry(const IntegerLattice& lat, const IMat& m) {
    if (m.rows() != lat.rank() || m.cols() != lat.rank())
        throw std::invalid_argument("isometry matrix must be " + std::to_string(lat.rank()) +
                                    "x" + std::to_string(lat.rank()));
    const IMat lhs = m.transpose() * lat.gram() * m;
    for (int i = 0; i < lat.rank(); ++i)
        for (int j = 0; j < lat.rank(); ++j)
            if (lhs(i, j) != lat.gram()(i, j)) {
                std::ostringstream msg;
                msg << "matrix is not an isometry: (M^T G M)(" << i << "," << j << ") = "
                    << lhs(i, j).str() << " but G(" << i << "," << j << ") = "
                    << lat.gram()(i, j).str();
                throw std::invalid_argument(msg.str());
            }
    return Isometry{lat, m};
}

inline Isometry identity_isometry(const IntegerLattice& lat) {
    return Isometry{lat, IMat::identity(lat.rank())};
}

inline void check_same_lattice(const Isometry& a, const Isometry& b) {
    if (a.lattice != b.lattice)
        throw std::invalid_argument("isometries live on different lattices");
}

// compose(a, b) = a after b, i.e. v -> a(b(v)).
inline Isometry compose(const Isometry& a, const Isometry& b) {
    check_same_lattice(a, b);
    return Isometry{a.lattice, a.matrix * b.matrix};
}

inline Isometry inverse(const Isometry& a) {
    const QMat inv = inverse(to_rational(a.matrix));
    if (!is_integral(inv))
        throw std::domain_error("isometry is not invertible over the integers");
    return Isometry{a.lattice, to_integral(inv)};
}

inline Int determinant(const Isometry& a) { return determinant(a.matrix); }

// Image of alpha under the reflection fixing the hyperplane orthogonal to v:
// alpha - (2(alpha,v)/(v,v)) v. For (v,v) = -2 this is alpha + (alpha,v) v.
inline QVec reflect(const IntegerLattice& lat, const QVec& v, const QVec& alpha) {
    const Rat q = norm(lat, v);
    if (q == 0) throw std::invalid_argument("cannot reflect in an isotropic vector");
    const Rat c = 2 * pairing(lat, alpha, v) / q;
    QVec out = alpha;
    for (int i = 0; i < lat.rank(); ++i) out[i] -= c * v[i];
    return out;
}

inline QMat reflection_matrix(const IntegerLattice& lat, const QVec& v) {
    const Rat q = norm(lat, v);
    if (q == 0) throw std::invalid_argument("cannot reflect in an isotropic vector");
    const int n = lat.rank();
    // I - (2/(v,v)) v (Gv)^T
    QVec gv(n, Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) gv[i] += Rat(lat.gram()(i, j)) * v[j];
    QMat m = QMat::identity(n);
    for (int i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        const Rat vi2q = 2 * v[i] / q;
        for (int j = 0; j < n; ++j) m(i, j) -= vi2q * gv[j];
    }
    return m;
}

// Reflection in an anisotropic rational vector, required to be integral on
// the lattice (always true for integral v of norm +-2 on an even lattice).
inline Isometry reflection_in_vector(const IntegerLattice& lat, const QVec& v) {
    const QMat m = reflection_matrix(lat, v);
    if (!is_integral(m))
        throw std::invalid_argument("reflection does not preserve the lattice");
    return verify_isometry(lat, to_integral(m));
}

// s_delta for an integral (-2)-class: alpha -> alpha + (alpha,delta) delta.
inline Isometry reflection_isometry(const IntegerLattice& lat, const Vec& delta) {
    check_vector(lat, delta);
    if (norm(lat, delta) != -2)
        throw std::invalid_argument("reflection_isometry expects a class of norm -2; "
                                    "use reflect for general anisotropic vectors");
    return reflection_in_vector(lat, to_rational(delta));
}

struct ReflectionFactorization {
    std::vector<QVec> vectors;  // composing left to right reproduces the isometry
    std::vector<int> signs;     // per-factor spinor contribution, sign of -(v,v)/2
};

namespace detail {

// Scale a rational vector to a primitive integral one with positive leading
// coordinate; the reflection it defines is unchanged.
inline QVec normalize_reflection_vector(const QVec& v) {
    Int lcm(1);
    for (const Rat& x : v) {
        const Int d = boost::multiprecision::denominator(x);
        lcm = boost::multiprecision::lcm(lcm, d);
    }
    Vec w(v.size());
    Int g(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = integer_part(v[i] * Rat(lcm));
        g = boost::multiprecision::gcd(g, w[i]);
    }
    if (g == 0) return v;
    int lead_sign = 0;
    for (const Int& x : w)
        if (x != 0) { lead_sign = x > 0 ? 1 : -1; break; }
    if (lead_sign < 0) g = -g;
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(w[i] / g);
    return out;
}

}  // namespace detail

// Cartan-Dieudonne decomposition into at most 2*rank rational reflections.
// The basis vectors fixed one at a time come from a congruent diagonalization
// of the form, so every processed vector is anisotropic; within a step, if
// g(b)-b is isotropic the pair (g(b)+b, b) is used instead.
inline ReflectionFactorization cartan_dieudonne_factor(const Isometry& a) {
    const IntegerLattice& lat = a.lattice;
    const int n = lat.rank();
    const Diagonalization diag = symmetric_diagonalize(to_rational(lat.gram()));
    for (const Rat& d : diag.diag)
        if (d == 0) throw std::invalid_argument("Cartan-Dieudonne requires a nondegenerate lattice");

    ReflectionFactorization out;
    QMat cur = to_rational(a.matrix);
    for (int i = 0; i < n; ++i) {
        QVec b(n);
        for (int r = 0; r < n; ++r) b[r] = diag.basis(r, i);
        const QVec u = cur.apply(b);
        QVec v(n);
        bool moved = false;
        for (int r = 0; r < n; ++r) {
            v[r] = u[r] - b[r];
            if (v[r] != 0) moved = true;
        }
        if (!moved) continue;
        if (norm(lat, v) != 0) {
            cur = reflection_matrix(lat, v) * cur;
            out.vectors.push_back(detail::normalize_reflection_vector(v));
        } else {
            QVec w(n);
            for (int r = 0; r < n; ++r) w[r] = u[r] + b[r];  // norm 4*(b,b) != 0 here
            cur = reflection_matrix(lat, w) * cur;
            cur = reflection_matrix(lat, b) * cur;
            out.vectors.push_back(detail::normalize_reflection_vector(w));
            out.vectors.push_back(detail::normalize_reflection_vector(b));
        }
    }
    if (cur != QMat::identity(n))
        throw std::logic_error("Cartan-Dieudonne did not terminate at the identity");
    for (const QVec& v : out.vectors)
        out.signs.push_back(norm(lat, v) < 0 ? +1 : -1);
    return out;
}

inline int spinor_norm(const Isometry& a) {
    const ReflectionFactorization f = cartan_dieudonne_factor(a);
    int s = 1;
    for (int sg : f.signs) s *= sg;
    return s;
}

// Basis of the saturation of ker(M - I) inside the lattice, via the Smith
// normal form of M - I (the kernel columns of a unimodular transform are
// automatically primitive).
inline std::vector<Vec> fixed_sublattice(const Isometry& a) {
    const int n = a.lattice.rank();
    IMat b = a.matrix;
    for (int i = 0; i < n; ++i) b(i, i) -= 1;
    const SmithResult snf = smith_normal_form(b);
    std::vector<Vec> basis;
    for (int i = 0; i < n; ++i) {
        if (snf.s(i, i) != 0) continue;
        Vec col(n);
        for (int r = 0; r < n; ++r) col[r] = snf.v(r, i);
        basis.push_back(std::move(col));
    }
    return basis;
}

// Sign of the determinant of the orthogonal projection of a(plane) back onto
// span(plane); the plane must be positive definite for the form.
inline int orientation_sign(const Isometry& a, const std::vector<QVec>& plane) {
    const IntegerLattice& lat = a.lattice;
    const int n = lat.rank();
    const int k = static_cast<int>(plane.size());
    if (k == 0) throw std::invalid_argument("orientation needs a nonempty plane");
    for (const QVec& v : plane) check_vector(lat, v);

    QMat p(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) p(i, j) = pairing(lat, plane[i], plane[j]);
    {   // positive definiteness of the span
        const Diagonalization d = symmetric_diagonalize(p);
        for (const Rat& di : d.diag)
            if (di <= 0) throw std::invalid_argument("plane is not positive definite");
    }

    const QMat m = to_rational(a.matrix);
    // coefficients of the projections: C = P^{-1} (B^T G (M B))
    QMat rhs(k, k);
    for (int j = 0; j < k; ++j) {
        const QVec img = m.apply(plane[j]);
        for (int i = 0; i < k; ++i) rhs(i, j) = pairing(lat, plane[i], img);
    }
    const Rat det = determinant(inverse(p) * rhs);
    if (det == 0) throw std::domain_error("projection of the image plane is singular");
    return det > 0 ? +1 : -1;
}

}  // namespace k3lat
