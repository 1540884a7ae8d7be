#pragma once

#include <optional>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

// Row count from which mat_mul switches to the OpenMP kernel.
inline constexpr int kParallelThreshold = 48;

/// Max-plus matrix product.  Dispatches to the OpenMP kernel for large
/// matrices and to the serial reference otherwise; both compute
/// (AB)_ij = max_k (a_ik + b_kj) with bottom-absorbing multiplication.
Matrix mat_mul(const Matrix& a, const Matrix& b);

/// Serial reference product, kept as the ground truth the parallel kernel is
/// tested and benchmarked against.
Matrix mat_mul_serial(const Matrix& a, const Matrix& b);

/// OpenMP kernel (parallel over result rows).
Matrix mat_mul_parallel(const Matrix& a, const Matrix& b);

/// A^t by repeated squaring; A^0 is the identity even for the all-bottom
/// matrix.
Matrix mat_power(const Matrix& a, long long t);

/// A^t by t successive products; reference for the squaring path.
Matrix mat_power_iterative(const Matrix& a, long long t);

Vector mat_vec(const Matrix& a, const Vector& v);

/// A^t v computed by t successive matrix-vector products; never forms A^t.
Vector orbit(const Matrix& a, const Vector& v, long long t);

/// Kleene star I + A + A^2 + ... truncated at A^{n-1}.  Requires every
/// cycle to have nonpositive weight; otherwise throws DivergenceError with a
/// positive-mean cycle witness.
Matrix kleene_star(const Matrix& a);

/// Largest minus smallest finite entry.  Errors if all entries are bottom.
Scalar matrix_norm(const Matrix& a);

/// Indices whose row or column contains a finite entry, ascending.
std::vector<int> support_indices(const Matrix& a);

/// Size of the smallest principal submatrix containing all finite entries.
int support_size(const Matrix& a);

Scalar vector_norm(const Vector& v);  // max - min entry; all entries must be finite

// Entrywise helpers.
Matrix mat_oplus(const Matrix& a, const Matrix& b);
Matrix scalar_times(const Scalar& s, const Matrix& a);
Vector vec_oplus(const Vector& a, const Vector& b);
Vector scalar_times(const Scalar& s, const Vector& v);
bool is_all_bottom(const Matrix& a);
bool mat_leq(const Matrix& a, const Matrix& b);  // entrywise a <= b
bool vec_leq(const Vector& a, const Vector& b);

/// A positive-weight elementary cycle of D(A), if one exists.
std::optional<std::pair<std::vector<int>, mpq_class>> find_positive_cycle(const Matrix& a);

}  // namespace maxplus
