#pragma once

// Exact Smith normal form over the integers, with unimodular transforms.

#include "k3lat/numeric.hpp"

namespace k3lat {

struct SmithResult {
    IMat s;  // diagonal, nonnegative, divisibility chain s(0,0) | s(1,1) | ...
    IMat u;  // unimodular, rows x rows
    IMat v;  // unimodular, cols x cols, with u * m * v == s
};

inline SmithResult smith_normal_form(const IMat& m) {
    const int rows = m.rows(), cols = m.cols();
    SmithResult r{m, IMat::identity(rows), IMat::identity(cols)};
    IMat& s = r.s;
    IMat& u = r.u;
    IMat& v = r.v;

    auto swap_rows = [&](int a, int b) {
        if (a == b) return;
        for (int c = 0; c < cols; ++c) std::swap(s(a, c), s(b, c));
        for (int c = 0; c < rows; ++c) std::swap(u(a, c), u(b, c));
    };
    auto swap_cols = [&](int a, int b) {
        if (a == b) return;
        for (int c = 0; c < rows; ++c) std::swap(s(c, a), s(c, b));
        for (int c = 0; c < cols; ++c) std::swap(v(c, a), v(c, b));
    };
    auto add_row = [&](int dst, int src, const Int& f) {  // row dst += f * row src
        for (int c = 0; c < cols; ++c) s(dst, c) += f * s(src, c);
        for (int c = 0; c < rows; ++c) u(dst, c) += f * u(src, c);
    };
    auto add_col = [&](int dst, int src, const Int& f) {
        for (int c = 0; c < rows; ++c) s(c, dst) += f * s(c, src);
        for (int c = 0; c < cols; ++c) v(c, dst) += f * v(c, src);
    };
    auto negate_row = [&](int a) {
        for (int c = 0; c < cols; ++c) s(a, c) = -s(a, c);
        for (int c = 0; c < rows; ++c) u(a, c) = -u(a, c);
    };

    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block, ties by position
            int pi = -1, pj = -1;
            Int best(0);
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j) {
                    if (s(i, j) == 0) continue;
                    const Int a = abs(s(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
            if (pi < 0) { t = steps; break; }  // trailing block is zero
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (s(i, t) == 0) continue;
                add_row(i, t, -(s(i, t) / s(t, t)));
                if (s(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (s(t, j) == 0) continue;
                add_col(j, t, -(s(t, j) / s(t, t)));
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // enforce divisibility of the remaining block by the pivot
            bool divides_all = true;
            for (int i = t + 1; i < rows && divides_all; ++i)
                for (int j = t + 1; j < cols; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        add_row(t, i, Int(1));
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
        }
        if (t >= steps) break;
    }
    for (int t = 0; t < steps; ++t)
        if (s(t, t) < 0) negate_row(t);
    return r;
}

}  // namespace k3lat
