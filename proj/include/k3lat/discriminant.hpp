#pragma once

// The discriminant group L*/L of a nondegenerate lattice, its quadratic form
// mod 2Z (for even lattices), and the induced action of isometries.
// Generators come from the Smith normal form transforms, so they are
// reproducible; triviality tests do not depend on the generator choice.

#include "k3lat/isometry.hpp"
#include "k3lat/smith.hpp"

namespace k3lat {

class DiscriminantGroup {
public:
    explicit DiscriminantGroup(const IntegerLattice& lat) : lat_(lat) {
        if (!lat.is_nondegenerate())
            throw std::invalid_argument("discriminant group needs a nondegenerate lattice");
        const int n = lat.rank();
        const SmithResult snf = smith_normal_form(lat.gram());
        // L* = G^{-1} Z^n = V S^{-1} Z^n, so the classes of the columns of
        // V S^{-1} generate L*/L with orders s_i.
        v_inv_ = to_integral(inverse(to_rational(snf.v)));
        all_divisors_.resize(n);
        for (int i = 0; i < n; ++i) {
            all_divisors_[i] = snf.s(i, i);
            if (all_divisors_[i] > 1) {
                QVec g(n);
                for (int r = 0; r < n; ++r) g[r] = Rat(snf.v(r, i)) / Rat(snf.s(i, i));
                divisors_.push_back(all_divisors_[i]);
                generators_.push_back(std::move(g));
                nontrivial_idx_.push_back(i);
            }
        }
    }

    const IntegerLattice& lattice() const { return lat_; }
    const std::vector<Int>& divisors() const { return divisors_; }
    const std::vector<QVec>& generators() const { return generators_; }
    bool trivial() const { return divisors_.empty(); }

    Int order() const {
        Int o(1);
        for (const Int& d : divisors_) o *= d;
        return o;
    }

    bool contains(const QVec& x) const {  // x in L*?
        check_vector(lat_, x);
        for (int i = 0; i < lat_.rank(); ++i) {
            Rat acc(0);
            for (int j = 0; j < lat_.rank(); ++j) acc += Rat(lat_.gram()(i, j)) * x[j];
            if (!is_integral(acc)) return false;
        }
        return true;
    }

    // Coordinates of the class of x in L*/L: entry i lives in Z/all_divisors_[i].
    Vec class_coordinates(const QVec& x) const {
        if (!contains(x)) throw std::invalid_argument("vector is not in the dual lattice");
        const int n = lat_.rank();
        Vec z(n);
        for (int i = 0; i < n; ++i) {
            Rat acc(0);
            for (int j = 0; j < n; ++j) acc += Rat(v_inv_(i, j)) * x[j];
            acc *= Rat(all_divisors_[i]);
            Int zi = integer_part(acc) % all_divisors_[i];
            if (zi < 0) zi += all_divisors_[i];
            z[i] = zi;
        }
        return z;
    }

    // Class coordinates restricted to the nontrivial generator slots.
    Vec reduced_coordinates(const QVec& x) const {
        const Vec z = class_coordinates(x);
        Vec out(nontrivial_idx_.size());
        for (std::size_t i = 0; i < nontrivial_idx_.size(); ++i) out[i] = z[nontrivial_idx_[i]];
        return out;
    }

private:
    IntegerLattice lat_;
    std::vector<Int> divisors_;
    std::vector<QVec> generators_;
    std::vector<int> nontrivial_idx_;
    std::vector<Int> all_divisors_;
    IMat v_inv_;
};

inline DiscriminantGroup discriminant_group(const IntegerLattice& lat) {
    return DiscriminantGroup(lat);
}

// q(x) = (x,x) mod 2Z for x in L*, L even; canonical representative in [0,2).
inline Rat discriminant_form_value(const IntegerLattice& lat, const QVec& x) {
    if (!lat.is_even()) throw std::invalid_argument("discriminant form needs an even lattice");
    if (!DiscriminantGroup(lat).contains(x))
        throw std::invalid_argument("vector is not in the dual lattice");
    Rat q = norm(lat, x);
    const Int num = boost::multiprecision::numerator(q);
    const Int den = boost::multiprecision::denominator(q);
    Int fl = num / (2 * den);  // floor(q/2) for the canonical representative
    if (q < 2 * Rat(fl)) fl -= 1;
    return q - 2 * Rat(fl);
}

struct DiscriminantAction {
    std::vector<Int> divisors;  // one per nontrivial generator
    IMat matrix;                // column j = class coordinates of a(g_j)
};

inline DiscriminantAction induced_discriminant_action(const Isometry& a) {
    const DiscriminantGroup disc(a.lattice);
    const int k = static_cast<int>(disc.divisors().size());
    DiscriminantAction act{disc.divisors(), IMat(k, k)};
    const QMat m = to_rational(a.matrix);
    for (int j = 0; j < k; ++j) {
        const Vec z = disc.reduced_coordinates(m.apply(disc.generators()[j]));
        for (int i = 0; i < k; ++i) act.matrix(i, j) = z[i];
    }
    return act;
}

inline bool acts_trivially_on_discriminant(const Isometry& a) {
    const DiscriminantGroup disc(a.lattice);
    const QMat m = to_rational(a.matrix);
    for (const QVec& g : disc.generators()) {
        const QVec img = m.apply(g);
        for (std::size_t i = 0; i < img.size(); ++i)
            if (!is_integral(img[i] - g[i])) return false;
    }
    return true;
}

}  // namespace k3lat
