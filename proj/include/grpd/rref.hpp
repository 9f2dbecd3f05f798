#pragma once

#include "grpd/scalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace grpd {

/// Sparse vector: (index, coefficient) pairs, sorted by index, no zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec sparse_unit(int index);
SparseVec sparse_from_dense(const std::vector<Scalar>& v);
std::vector<Scalar> dense_from_sparse(const SparseVec& v, int dim);
bool sparse_is_zero(const SparseVec& v);
SparseVec sparse_scale(const SparseVec& v, const Scalar& c);
/// a + c*b
SparseVec sparse_axpy(const SparseVec& a, const Scalar& c, const SparseVec& b);
std::optional<Scalar> sparse_at(const SparseVec& v, int index);

/// Incremental reduced row echelon form over the Gaussian rationals.
/// Rows are fully reduced against each other and normalized to a leading 1,
/// and pivots are chosen deterministically (leftmost nonzero), so the stored
/// basis of the row span is canonical: two generating sets of the same
/// subspace produce identical state.
class RowReducer {
public:
    /// Residual of v modulo the current row span. The result has zero
    /// entries at every pivot column and equals v modulo the span.
    SparseVec reduce(const SparseVec& v) const;

    /// Inserts v; returns true if the rank grew.
    bool add(const SparseVec& v);

    bool contains(const SparseVec& v) const { return sparse_is_zero(reduce(v)); }

    int rank() const { return static_cast<int>(rows_.size()); }
    const std::map<int, SparseVec>& pivot_rows() const { return rows_; }

    /// Columns in [0, dim) that carry no pivot, in increasing order.
    std::vector<int> free_columns(int dim) const;

private:
    std::map<int, SparseVec> rows_;  // pivot column -> normalized row
};

/// Exact rank of a list of sparse rows.
int sparse_rank(const std::vector<SparseVec>& rows);

/// One solution of the linear system  sum_j coeffs[i][j] * x[j] = rhs[i]
/// (free variables set to zero), or nullopt when the system is infeasible.
/// Over an exact field on a complete finite system, infeasibility is a
/// disproof of existence, not a numerical failure.
std::optional<std::vector<Scalar>> solve_linear_system(
    const std::vector<SparseVec>& coeff_rows, const std::vector<Scalar>& rhs,
    int num_unknowns);

/// Dense Gaussian elimination kernels. The parallel version distributes the
/// per-pivot elimination across rows with OpenMP; the serial version is the
/// reference used to cross-check it.
int dense_rank_serial(std::vector<std::vector<Scalar>> m);
int dense_rank_parallel(std::vector<std::vector<Scalar>> m);

}  // namespace grpd
