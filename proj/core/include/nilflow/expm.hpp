#pragma once

#include "nilflow/types.hpp"

namespace nilflow {

/// Matrix exponential by scaling-and-squaring with the diagonal Pade (13,13)
/// approximant. Robust for the non-normal matrices produced by indefinite
/// metrics; target relative accuracy ~1e-12 in exact scaling regime.
Mat expm(const Mat& A);

/// State of the affine flow  y' = A y + b  at time t:
///   y(t) = exp(tA) y0 + (int_0^t exp(sA) ds) b,
/// evaluated through one exponential of the augmented matrix [[A, b], [0, 0]].
Vec affine_flow(const Mat& A, const Vec& b, const Vec& y0, double t);

}  // namespace nilflow
