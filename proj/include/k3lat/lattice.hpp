#pragma once

// Integral lattices: a rank together with a symmetric integer Gram matrix.
// Vectors are coordinate tuples in the implicit basis; every formula below is
// basis-explicit once the Gram matrix is fixed.

#include "k3lat/numeric.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace k3lat {

struct Signature {
    int positive = 0;
    int negative = 0;
    int null = 0;

    bool operator==(const Signature& o) const {
        return positive == o.positive && negative == o.negative && null == o.null;
    }
};

class IntegerLattice {
public:
    IntegerLattice() : gram_(0, 0) {}
    explicit IntegerLattice(IMat gram) : gram_(std::move(gram)) {
        if (gram_.rows() != gram_.cols())
            throw std::invalid_argument("lattice Gram matrix must be square");
        if (!gram_.is_symmetric())
            throw std::invalid_argument("lattice Gram matrix must be symmetric");
    }

    int rank() const { return gram_.rows(); }
    const IMat& gram() const { return gram_; }

    bool is_even() const {
        for (int i = 0; i < rank(); ++i)
            if (gram_(i, i) % 2 != 0) return false;
        return true;
    }

    bool is_nondegenerate() const { return rank() == 0 || determinant(gram_) != 0; }

    bool operator==(const IntegerLattice& o) const { return gram_ == o.gram_; }
    bool operator!=(const IntegerLattice& o) const { return !(*this == o); }

private:
    IMat gram_;
};

enum class NamedLattice { U, E8, E8_MINUS, MINUS_TWO };

// Standard E8 Cartan matrix, Bourbaki numbering: chain 1-3-4-5-6-7-8 with
// node 2 attached to node 4.
inline IMat e8_cartan_matrix() {
    IMat c(8, 8);
    for (int i = 0; i < 8; ++i) c(i, i) = 2;
    const int edges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (const auto& e : edges) {
        c(e[0] - 1, e[1] - 1) = -1;
        c(e[1] - 1, e[0] - 1) = -1;
    }
    return c;
}

inline IntegerLattice build_named(NamedLattice name) {
    switch (name) {
        case NamedLattice::U:
            return IntegerLattice(IMat(2, 2, {Int(0), Int(1), Int(1), Int(0)}));
        case NamedLattice::E8:
            return IntegerLattice(e8_cartan_matrix());
        case NamedLattice::E8_MINUS: {
            IMat c = e8_cartan_matrix();
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) c(i, j) = -c(i, j);
            return IntegerLattice(c);
        }
        case NamedLattice::MINUS_TWO:
            return IntegerLattice(IMat(1, 1, {Int(-2)}));
    }
    throw std::invalid_argument("unknown lattice name");
}

inline IntegerLattice build_named(const std::string& name) {
    if (name == "U") return build_named(NamedLattice::U);
    if (name == "E8") return build_named(NamedLattice::E8);
    if (name == "E8_MINUS" || name == "E8(-1)") return build_named(NamedLattice::E8_MINUS);
    if (name == "MINUS_TWO" || name == "<-2>") return build_named(NamedLattice::MINUS_TWO);
    throw std::invalid_argument("unknown lattice name: '" + name + "'");
}

inline IntegerLattice direct_sum(const IntegerLattice& a, const IntegerLattice& b) {
    const int n = a.rank(), m = b.rank();
    IMat g(n + m, n + m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
    return IntegerLattice(std::move(g));
}

inline IntegerLattice twist(const IntegerLattice& a, const Int& n) {
    if (n == 0) throw std::invalid_argument("twist by zero is not a lattice");
    IMat g = a.gram();
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) g(i, j) *= n;
    return IntegerLattice(std::move(g));
}

inline void check_vector(const IntegerLattice& lat, const Vec& v) {
    if (static_cast<int>(v.size()) != lat.rank())
        throw std::invalid_argument("vector length does not match lattice rank");
}

inline void check_vector(const IntegerLattice& lat, const QVec& v) {
    if (static_cast<int>(v.size()) != lat.rank())
        throw std::invalid_argument("vector length does not match lattice rank");
}

inline Int pairing(const IntegerLattice& lat, const Vec& v, const Vec& w) {
    check_vector(lat, v);
    check_vector(lat, w);
    Int acc(0);
    for (int i = 0; i < lat.rank(); ++i) {
        if (v[i] == 0) continue;
        Int row(0);
        for (int j = 0; j < lat.rank(); ++j) row += lat.gram()(i, j) * w[j];
        acc += v[i] * row;
    }
    return acc;
}

inline Rat pairing(const IntegerLattice& lat, const QVec& v, const QVec& w) {
    check_vector(lat, v);
    check_vector(lat, w);
    Rat acc(0);
    for (int i = 0; i < lat.rank(); ++i) {
        if (v[i] == 0) continue;
        Rat row(0);
        for (int j = 0; j < lat.rank(); ++j) row += Rat(lat.gram()(i, j)) * w[j];
        acc += v[i] * row;
    }
    return acc;
}

inline Int norm(const IntegerLattice& lat, const Vec& v) { return pairing(lat, v, v); }
inline Rat norm(const IntegerLattice& lat, const QVec& v) { return pairing(lat, v, v); }

inline Signature signature(const IntegerLattice& lat) {
    const Diagonalization d = symmetric_diagonalize(to_rational(lat.gram()));
    Signature s;
    for (const Rat& di : d.diag) {
        if (di > 0) ++s.positive;
        else if (di < 0) ++s.negative;
        else ++s.null;
    }
    return s;
}

inline Int determinant(const IntegerLattice& lat) { return determinant(lat.gram()); }

// Parser for the constructor grammar used on the CLI: summands joined by '+',
// each a named lattice (U, E8, E8(-1), <-2>) or a generic rank-one <n>, with
// any number of twist suffixes "(n)", e.g. "U+U+U+E8(-1)+E8(-1)" or "<2>".
inline IntegerLattice parse_lattice(const std::string& text) {
    std::size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto parse_int = [&]() -> Int {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
            throw std::invalid_argument("lattice constructor: expected integer at position " +
                                        std::to_string(start) + " in '" + text + "'");
        return Int(text.substr(start, pos - start));
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw std::invalid_argument(std::string("lattice constructor: expected '") + c +
                                        "' in '" + text + "'");
        ++pos;
    };

    auto parse_term = [&]() -> IntegerLattice {
        skip_ws();
        IntegerLattice term;
        if (pos < text.size() && text[pos] == '<') {
            ++pos;
            Int n = parse_int();
            expect('>');
            if (n == 0) throw std::invalid_argument("lattice constructor: <0> is degenerate by construction");
            term = IntegerLattice(IMat(1, 1, {n}));
        } else {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            if (pos == start)
                throw std::invalid_argument("lattice constructor: unexpected token at position " +
                                            std::to_string(pos) + " in '" + text + "'");
            term = build_named(text.substr(start, pos - start));
        }
        skip_ws();
        while (pos < text.size() && text[pos] == '(') {
            ++pos;
            Int n = parse_int();
            expect(')');
            term = twist(term, n);
            skip_ws();
        }
        return term;
    };

    IntegerLattice result = parse_term();
    skip_ws();
    while (pos < text.size()) {
        expect('+');
        result = direct_sum(result, parse_term());
        skip_ws();
    }
    return result;
}

}  // namespace k3lat
