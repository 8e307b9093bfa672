// Smith normal form with deterministic pivoting.
#pragma once

#include "biext/matrix.hpp"

#include <optional>
#include <vector>

namespace biext {

struct SnfDecomposition {
    Matrix S;                   // U * M * V = S
    Matrix U, V;                // unimodular (empty when not requested)
    Matrix U_inv, V_inv;        // inverses (empty when not requested)
    std::vector<Integer> diag;  // d_1 | d_2 | ... followed by zeros, length min(rows, cols)
    std::size_t rank = 0;
};

struct SnfOptions {
    bool want_u = true;
    bool want_v = true;
    bool want_u_inv = false;
    bool want_v_inv = false;
};

namespace detail {

class SnfWorker {
public:
    SnfWorker(const Matrix& m, SnfOptions opt) : a_(m), opt_(opt) {
        const std::size_t r = m.rows(), c = m.cols();
        if (opt.want_u) u_ = Matrix::identity(r);
        if (opt.want_u_inv) ui_ = Matrix::identity(r);
        if (opt.want_v) v_ = Matrix::identity(c);
        if (opt.want_v_inv) vi_ = Matrix::identity(c);
    }

    SnfDecomposition run() {
        const std::size_t r = a_.rows(), c = a_.cols(), n = std::min(r, c);
        std::size_t t = 0;
        for (; t < n; ++t) {
            if (!pivot_global(t)) break;
            for (;;) {
                clear_cross(t);
                // divisibility against the remaining block
                auto bad = find_nondivisible(t);
                if (!bad) break;
                row_add(t, *bad, Integer(1));
            }
            if (a_(t, t).sign() < 0) row_negate(t);
        }
        SnfDecomposition out;
        out.rank = t;
        out.diag.resize(n);
        for (std::size_t i = 0; i < n; ++i) out.diag[i] = a_(i, i);
        out.S = std::move(a_);
        out.U = std::move(u_);
        out.V = std::move(v_);
        out.U_inv = std::move(ui_);
        out.V_inv = std::move(vi_);
        return out;
    }

private:
    // Smallest nonzero |a_ij| over i,j >= t, ties by lowest row-major index; moved to (t,t).
    bool pivot_global(std::size_t t) {
        const std::size_t r = a_.rows(), c = a_.cols();
        std::size_t bi = r, bj = c;
        Integer best;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                const Integer& x = a_(i, j);
                if (x.is_zero()) continue;
                Integer ax = abs(x);
                if (bi == r || ax < best) {
                    best = ax;
                    bi = i;
                    bj = j;
                    if (best == Integer(1)) goto found;
                }
            }
        if (bi == r) return false;
    found:
        row_swap(t, bi);
        col_swap(t, bj);
        return true;
    }

    // Eliminate row t and column t outside the pivot; re-pivot inside the cross when a remainder survives.
    void clear_cross(std::size_t t) {
        const std::size_t r = a_.rows(), c = a_.cols();
        for (;;) {
            bool dirty = false;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a_(i, t).is_zero()) continue;
                Integer q = floor_div(a_(i, t), a_(t, t));
                row_add(i, t, -q);
                if (!a_(i, t).is_zero()) dirty = true;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a_(t, j).is_zero()) continue;
                Integer q = floor_div(a_(t, j), a_(t, t));
                col_add(j, t, -q);
                if (!a_(t, j).is_zero()) dirty = true;
            }
            if (!dirty) return;
            // smallest nonzero in the cross
            std::size_t bi = t, bj = t;
            Integer best = abs(a_(t, t));
            for (std::size_t i = t + 1; i < r; ++i)
                if (!a_(i, t).is_zero() && abs(a_(i, t)) < best) { best = abs(a_(i, t)); bi = i; bj = t; }
            for (std::size_t j = t + 1; j < c; ++j)
                if (!a_(t, j).is_zero() && abs(a_(t, j)) < best) { best = abs(a_(t, j)); bi = t; bj = j; }
            row_swap(t, bi);
            col_swap(t, bj);
        }
    }

    std::optional<std::size_t> find_nondivisible(std::size_t t) const {
        const Integer& p = a_(t, t);
        if (abs(p) == Integer(1)) return std::nullopt;
        for (std::size_t i = t + 1; i < a_.rows(); ++i)
            for (std::size_t j = t + 1; j < a_.cols(); ++j)
                if (!a_(i, j).is_zero() && !divides(p, a_(i, j))) return i;
        return std::nullopt;
    }

    void row_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        a_.swap_rows(a, b);
        if (opt_.want_u) u_.swap_rows(a, b);
        if (opt_.want_u_inv) ui_.swap_cols(a, b);
    }
    void col_swap(std::size_t a, std::size_t b) {
        if (a == b) return;
        a_.swap_cols(a, b);
        if (opt_.want_v) v_.swap_cols(a, b);
        if (opt_.want_v_inv) vi_.swap_rows(a, b);
    }
    // row[dst] += q row[src]
    void row_add(std::size_t dst, std::size_t src, const Integer& q) {
        a_.add_row(dst, src, q);
        if (opt_.want_u) u_.add_row(dst, src, q);
        if (opt_.want_u_inv) ui_.add_col(src, dst, -q);
    }
    // col[dst] += q col[src]
    void col_add(std::size_t dst, std::size_t src, const Integer& q) {
        a_.add_col(dst, src, q);
        if (opt_.want_v) v_.add_col(dst, src, q);
        if (opt_.want_v_inv) vi_.add_row(src, dst, -q);
    }
    void row_negate(std::size_t t) {
        a_.negate_row(t);
        if (opt_.want_u) u_.negate_row(t);
        if (opt_.want_u_inv) ui_.negate_col(t);
    }

    Matrix a_, u_, v_, ui_, vi_;
    SnfOptions opt_;
};

} // namespace detail

inline SnfDecomposition snf(const Matrix& m, SnfOptions opt = {}) {
    return detail::SnfWorker(m, opt).run();
}

} // namespace biext
