#pragma once

// Exact scalar types and dense exact linear algebra shared by the whole
// library. Everything is arbitrary precision: spinor norms and discriminant
// actions are sign/torsion data, so no floating point appears anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace k3lat {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Vec = std::vector<Int>;    // integral coordinate tuple
using QVec = std::vector<Rat>;   // rational coordinate tuple

inline QVec to_rational(const Vec& v) {
    QVec q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rat(v[i]);
    return q;
}

inline bool is_integral(const Rat& x) {
    return boost::multiprecision::denominator(x) == 1;
}

inline Int integer_part(const Rat& x) {
    if (!is_integral(x)) throw std::domain_error("expected an integral rational");
    return boost::multiprecision::numerator(x);
}

inline bool is_integral(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return is_integral(x); });
}

inline Vec to_integral(const QVec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = integer_part(v[i]);
    return out;
}

// Dense row-major matrix over an exact scalar.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
    Matrix(int rows, int cols, std::initializer_list<T> init) : Matrix(rows, cols) {
        if (static_cast<int>(init.size()) != rows * cols)
            throw std::invalid_argument("matrix initializer size mismatch");
        std::copy(init.begin(), init.end(), data_.begin());
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const T& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix p(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const T& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
            }
        return p;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw std::invalid_argument("matrix-vector shape mismatch");
        std::vector<T> out(rows_);
        for (int i = 0; i < rows_; ++i) {
            T acc(0);
            for (int j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
            out[i] = std::move(acc);
        }
        return out;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (int i = 0; i < rows_; ++i)
            for (int j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using IMat = Matrix<Int>;
using QMat = Matrix<Rat>;

inline QMat to_rational(const IMat& m) {
    QMat q(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) q(i, j) = Rat(m(i, j));
    return q;
}

inline bool is_integral(const QMat& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!is_integral(m(i, j))) return false;
    return true;
}

inline IMat to_integral(const QMat& m) {
    IMat out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = integer_part(m(i, j));
    return out;
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    IMat a = m;
    Int prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (a(r, k) != 0) { p = r; break; }
            if (p < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign > 0 ? a(n - 1, n - 1) : -a(n - 1, n - 1);
}

// Exact determinant over the rationals (Gaussian pivot product).
inline Rat determinant(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = m.rows();
    QMat a = m;
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int r = col; r < n; ++r)
            if (a(r, col) != 0) { p = r; break; }
        if (p < 0) return Rat(0);
        if (p != col) {
            for (int c = 0; c < n; ++c) std::swap(a(p, c), a(col, c));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col) == 0) continue;
            const Rat f = a(r, col) / a(col, col);
            for (int c = col; c < n; ++c) a(r, c) -= f * a(col, c);
        }
    }
    return det;
}

// Exact inverse over the rationals; throws on singular input.
inline QMat inverse(const QMat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    const int n = m.rows();
    QMat a = m;
    QMat inv = QMat::identity(n);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int r = col; r < n; ++r)
            if (a(r, col) != 0) { p = r; break; }
        if (p < 0) throw std::domain_error("matrix is singular");
        if (p != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a(p, c), a(col, c));
                std::swap(inv(p, c), inv(col, c));
            }
        const Rat piv = a(col, col);
        for (int c = 0; c < n; ++c) { a(col, c) /= piv; inv(col, c) /= piv; }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Rat f = a(r, col);
            for (int c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

inline QMat inverse(const IMat& m) { return inverse(to_rational(m)); }

// Rank of an integer matrix over the field with p elements.
inline int rank_mod_p(const IMat& m, const Int& p) {
    const int rows = m.rows(), cols = m.cols();
    Matrix<Int> a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            Int v = m(i, j) % p;
            if (v < 0) v += p;
            a(i, j) = v;
        }
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a(r, col) != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < cols; ++c) std::swap(a(piv, c), a(rank, c));
        Int inv_piv = 1, base = a(rank, col), e = p - 2;  // Fermat inverse, p prime
        {
            Int b = base % p, acc = 1;
            while (e > 0) {
                if ((e & 1) != 0) acc = acc * b % p;
                b = b * b % p;
                e >>= 1;
            }
            inv_piv = acc;
        }
        for (int r = 0; r < rows; ++r) {
            if (r == rank || a(r, col) == 0) continue;
            Int f = a(r, col) * inv_piv % p;
            for (int c = 0; c < cols; ++c) {
                a(r, c) = (a(r, c) - f * a(rank, c)) % p;
                if (a(r, c) < 0) a(r, c) += p;
            }
        }
        ++rank;
    }
    return rank;
}

// Congruent diagonalization of a symmetric rational matrix: returns a basis B
// (columns) and the diagonal values d_i with B^T A B = diag(d). Deterministic
// pivot choice: first usable index wins. Zero diagonal values span the radical.
struct Diagonalization {
    QMat basis;              // columns b_i
    std::vector<Rat> diag;   // d_i = b_i^T A b_i
};

inline Diagonalization symmetric_diagonalize(const QMat& a0) {
    if (!a0.is_symmetric() && a0.rows() != a0.cols())
        throw std::invalid_argument("symmetric_diagonalize expects a square matrix");
    const int n = a0.rows();
    QMat a = a0;
    QMat b = QMat::identity(n);

    auto swap_basis = [&](int i, int j) {
        for (int r = 0; r < n; ++r) std::swap(b(r, i), b(r, j));
        for (int r = 0; r < n; ++r) std::swap(a(r, i), a(r, j));
        for (int c = 0; c < n; ++c) std::swap(a(i, c), a(j, c));
    };
    // b_i += t * b_j, updating A = B^T A0 B accordingly
    auto add_basis = [&](int i, int j, const Rat& t) {
        for (int r = 0; r < n; ++r) b(r, i) += t * b(r, j);
        for (int r = 0; r < n; ++r) a(r, i) += t * a(r, j);
        for (int c = 0; c < n; ++c) a(i, c) += t * a(j, c);
    };

    for (int i = 0; i < n; ++i) {
        if (a(i, i) == 0) {
            int jd = -1;
            for (int j = i + 1; j < n; ++j)
                if (a(j, j) != 0) { jd = j; break; }
            if (jd >= 0) {
                swap_basis(i, jd);
            } else {
                int jo = -1;
                for (int j = i + 1; j < n; ++j)
                    if (a(i, j) != 0) { jo = j; break; }
                if (jo < 0) continue;  // row i lies in the radical
                add_basis(i, jo, Rat(1));  // now a(i,i) = 2*a(i,jo) != 0
            }
        }
        const Rat piv = a(i, i);
        for (int j = i + 1; j < n; ++j) {
            if (a(i, j) == 0) continue;
            add_basis(j, i, -a(i, j) / piv);
        }
    }
    Diagonalization out;
    out.basis = std::move(b);
    out.diag.resize(n);
    for (int i = 0; i < n; ++i) out.diag[i] = a(i, i);
    return out;
}

inline bool is_prime(const Int& p) {
    if (p < 2) return false;
    for (Int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline std::string to_string(const Int& x) { return x.str(); }

inline std::string to_string(const Rat& x) {
    const Int num = boost::multiprecision::numerator(x);
    const Int den = boost::multiprecision::denominator(x);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

}  // namespace k3lat
