/*
 * The bar involution on a weight space of a tensor module, induced from
 * bar-fixedness of the standard vectors: express a vector in a basis of
 * standard vectors, bar every coefficient, and map back. The standard basis
 * is chosen greedily in enumeration order, keeping each vector that raises
 * the rank; falling short of the weight-space dimension means the spanning
 * property failed and is reported loudly, never silently ignored.
 */
#pragma once

#include "qcb/tensor.hpp"

namespace qcb {

class spanning_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BarBasis {
public:
    BarBasis(Content nu, std::vector<MuSeq> selected, std::vector<MuSeq> enumerated,
             Matrix<RatQ> l_cols, Matrix<RatQ> l_inv)
        : nu_(std::move(nu)), selected_(std::move(selected)),
          enumerated_(std::move(enumerated)), l_cols_(std::move(l_cols)),
          l_inv_(std::move(l_inv)) {}

    const Content& nu() const { return nu_; }
    const std::vector<MuSeq>& selected() const { return selected_; }
    const std::vector<MuSeq>& enumerated() const { return enumerated_; }

    // Columns are the selected standard vectors in pure-tensor coordinates.
    const Matrix<RatQ>& change_to_tensor() const { return l_cols_; }
    const Matrix<RatQ>& change_to_standard() const { return l_inv_; }

    size_t dim() const { return l_cols_.rows(); }

    TensorVector bar(const TensorVector& v) const {
        if (v.nu != nu_) throw std::invalid_argument("bar: content mismatch");
        const size_t d = dim();
        std::vector<RatQ> std_coords(d);
        for (size_t r = 0; r < d; ++r) {
            RatQ acc;
            for (const auto& [k, c] : v.coeffs) acc += l_inv_.at(r, k) * c;
            std_coords[r] = acc.bar();
        }
        TensorVector out{nu_, {}};
        for (size_t k = 0; k < d; ++k) {
            RatQ acc;
            for (size_t r = 0; r < d; ++r) acc += l_cols_.at(k, r) * std_coords[r];
            out.add(k, acc);
        }
        return out;
    }

private:
    Content nu_;
    std::vector<MuSeq> selected_;
    std::vector<MuSeq> enumerated_;
    Matrix<RatQ> l_cols_;
    Matrix<RatQ> l_inv_;
};

// Scans enumerate_mu order and keeps each standard vector that raises the
// rank. `reversed` scans the same list backwards (used to check that the
// induced involution does not depend on the basis choice).
inline BarBasis build_bar_basis(const TensorModule& tm, const Content& nu,
                                bool reversed = false) {
    const TensorBasis& tb = tm.basis(nu);
    const size_t d = tb.dim();
    std::vector<MuSeq> mus = tm.enumerate_mu(nu);
    if (reversed) std::reverse(mus.begin(), mus.end());

    std::vector<MuSeq> selected;
    std::vector<TensorVector> vecs;
    RankTracker tracker(d);
    for (const auto& mu : mus) {
        if (selected.size() == d) break;
        TensorVector v = tm.l_vector(mu);
        std::vector<RatQ> row(d);
        for (const auto& [k, c] : v.coeffs) row[k] = c;
        if (tracker.offer(row)) {
            selected.push_back(mu);
            vecs.push_back(std::move(v));
        }
    }
    if (selected.size() != d)
        throw spanning_error("standard vectors do not span the weight space (rank " +
                             std::to_string(selected.size()) + " of " + std::to_string(d) + ")");

    Matrix<RatQ> l_cols(d, d);
    for (size_t c = 0; c < d; ++c)
        for (const auto& [k, v] : vecs[c].coeffs) l_cols.at(k, c) = v;
    SolveResult inv = solve_exact(l_cols, Matrix<RatQ>::identity(d));
    if (!inv.consistent || inv.rank != d)
        throw std::logic_error("bar basis: change of basis not invertible");
    return BarBasis(nu, std::move(selected), std::move(mus), std::move(l_cols),
                    std::move(inv.solution));
}

}  // namespace qcb
