#pragma once

#include "nilflow/types.hpp"

namespace nilflow {

/// Numerical rank with relative dead band tau (singular values > tau * sigma_max).
int rank_of(const Mat& M, double tau);

/// Euclidean-orthonormal basis of ker(M), columns of the result.
Mat kernel_basis(const Mat& M, double tau);

/// Euclidean-orthonormal basis of the column space of M.
Mat image_basis(const Mat& M, double tau);

/// Signature of a symmetric matrix. Eigenvalues inside the dead band
/// tau * max|lambda| raise E_DEGENERATE.
Signature signature_of(const Mat& M, double tau);

/// Largest absolute entry; 0 for empty matrices.
inline double max_abs(const Mat& M) { return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff(); }

}  // namespace nilflow
