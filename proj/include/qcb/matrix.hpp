/*
 * Dense matrices over RatQ and fraction-free exact elimination.
 *
 * The elimination clears denominators row by row, then runs Bareiss
 * (two-step) Gaussian elimination over Z[q,q^-1]: the division by the
 * previous pivot is exact by the Sylvester identity, which keeps entry
 * growth polynomial instead of exponential. Pivoting is deterministic:
 * columns are scanned left to right, and within a column the first row
 * with a nonzero entry is chosen.
 */
#pragma once

#include <optional>
#include <vector>

#include "qcb/ratq.hpp"

namespace qcb {

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(size_t rows, size_t cols, T init = T())
        : rows_(rows), cols_(cols), d_(rows * cols, init) {}

    static Matrix identity(size_t n) {
        Matrix m(n, n);
        for (size_t k = 0; k < n; ++k) m.at(k, k) = T(1);
        return m;
    }

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    T& at(size_t r, size_t c) { return d_[r * cols_ + c]; }
    const T& at(size_t r, size_t c) const { return d_[r * cols_ + c]; }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_, b.cols_);
        for (size_t i = 0; i < a.rows_; ++i)
            for (size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k) == T(0)) continue;
                for (size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<T> d_;
};

struct SolveResult {
    bool consistent = true;
    size_t rank = 0;
    std::vector<size_t> pivot_cols;   // within the coefficient block only
    Matrix<RatQ> solution;            // valid iff consistent; free variables set to 0
};

namespace detail {

// Row echelon of a LaurentInt matrix by Bareiss elimination, restricting
// pivot search to the first lead_cols columns. Returns pivot (row, col)s.
inline std::vector<std::pair<size_t, size_t>>
bareiss_echelon(Matrix<LaurentInt>& m, size_t lead_cols) {
    std::vector<std::pair<size_t, size_t>> pivots;
    LaurentInt prev(1);
    size_t row = 0;
    for (size_t col = 0; col < lead_cols && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && m.at(piv, col).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(piv, j));
        const LaurentInt p = m.at(row, col);
        for (size_t i = row + 1; i < m.rows(); ++i) {
            const LaurentInt f = m.at(i, col);
            for (size_t j = 0; j < m.cols(); ++j) {
                LaurentInt v = m.at(i, j) * p - f * m.at(row, j);
                auto q = v.divide_exact(prev);
                if (!q) throw std::logic_error("bareiss: inexact division (arithmetic bug)");
                m.at(i, j) = std::move(*q);
            }
        }
        pivots.emplace_back(row, col);
        prev = p;
        ++row;
    }
    return pivots;
}

inline Matrix<LaurentInt> clear_denominators(const Matrix<RatQ>& a) {
    Matrix<LaurentInt> m(a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i) {
        LaurentInt l(1);
        for (size_t j = 0; j < a.cols(); ++j) {
            const LaurentInt& d = a.at(i, j).den();
            l = *(l * d).divide_exact(laurent_gcd(l, d));
        }
        for (size_t j = 0; j < a.cols(); ++j) {
            const RatQ& v = a.at(i, j);
            m.at(i, j) = v.num() * *l.divide_exact(v.den());
        }
    }
    return m;
}

}  // namespace detail

// Rank and leftmost-independent pivot columns of a RatQ matrix.
struct EchelonInfo {
    size_t rank = 0;
    std::vector<size_t> pivot_cols;
};

inline EchelonInfo echelon_info(const Matrix<RatQ>& a) {
    Matrix<LaurentInt> m = detail::clear_denominators(a);
    auto pivots = detail::bareiss_echelon(m, m.cols());
    EchelonInfo info;
    info.rank = pivots.size();
    for (auto& [r, c] : pivots) info.pivot_cols.push_back(c);
    return info;
}

// Solves A X = B exactly. Inconsistency is reported, never thrown.
inline SolveResult solve_exact(const Matrix<RatQ>& a, const Matrix<RatQ>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve_exact: row mismatch");
    const size_t n = a.cols(), s = b.cols();
    Matrix<RatQ> aug(a.rows(), n + s);
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (size_t j = 0; j < s; ++j) aug.at(i, n + j) = b.at(i, j);
    }
    Matrix<LaurentInt> m = detail::clear_denominators(aug);
    auto pivots = detail::bareiss_echelon(m, n);

    SolveResult res;
    res.rank = pivots.size();
    for (auto& [r, c] : pivots) res.pivot_cols.push_back(c);

    // Rows below the last pivot must vanish on the right-hand side too.
    for (size_t i = res.rank; i < m.rows(); ++i)
        for (size_t j = n; j < n + s; ++j)
            if (!m.at(i, j).is_zero()) { res.consistent = false; return res; }

    // Back substitution in Q(q); free variables are 0.
    res.solution = Matrix<RatQ>(n, s);
    for (size_t k = pivots.size(); k-- > 0;) {
        auto [pr, pc] = pivots[k];
        for (size_t col = 0; col < s; ++col) {
            RatQ acc(m.at(pr, n + col));
            for (size_t j = pc + 1; j < n; ++j) {
                if (m.at(pr, j).is_zero()) continue;
                acc -= RatQ(m.at(pr, j)) * res.solution.at(j, col);
            }
            res.solution.at(pc, col) = acc / RatQ(m.at(pr, pc));
        }
    }
    return res;
}

// Incremental fraction-free rank tracking for greedy basis scans: rows are
// offered one at a time and accepted exactly when they raise the rank.
class RankTracker {
public:
    explicit RankTracker(size_t cols) : cols_(cols) {}

    size_t rank() const { return rows_.size(); }

    bool offer(const std::vector<RatQ>& row) {
        if (row.size() != cols_) throw std::invalid_argument("RankTracker: width mismatch");
        // Clear denominators.
        LaurentInt l(1);
        for (const auto& v : row)
            l = *(l * v.den()).divide_exact(laurent_gcd(l, v.den()));
        std::vector<LaurentInt> r(cols_);
        for (size_t j = 0; j < cols_; ++j) r[j] = row[j].num() * *l.divide_exact(row[j].den());
        // Reduce against the stored echelon rows (cross-multiplication).
        for (size_t k = 0; k < rows_.size(); ++k) {
            const LaurentInt v = r[lead_[k]];
            if (v.is_zero()) continue;
            const LaurentInt& p = rows_[k][lead_[k]];
            for (size_t j = 0; j < cols_; ++j) r[j] = r[j] * p - rows_[k][j] * v;
        }
        size_t lead = 0;
        while (lead < cols_ && r[lead].is_zero()) ++lead;
        if (lead == cols_) return false;
        rows_.push_back(std::move(r));
        lead_.push_back(lead);
        return true;
    }

private:
    size_t cols_;
    std::vector<std::vector<LaurentInt>> rows_;
    std::vector<size_t> lead_;
};

}  // namespace qcb
