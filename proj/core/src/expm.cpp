#include "nilflow/expm.hpp"

#include <cmath>

#include "nilflow/errors.hpp"

namespace nilflow {
namespace {

// Pade (13,13) numerator coefficients (Higham 2005).
constexpr double kB[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// theta_13: largest 1-norm for which the unscaled Pade-13 meets double precision.
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Mat expm(const Mat& A) {
  require(A.rows() == A.cols(), Err::Dim, "expm requires a square matrix");
  const Eigen::Index n = A.rows();
  if (n == 0) return Mat(0, 0);

  const double norm = A.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  if (norm == 0.0) return Mat::Identity(n, n);
  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  const Mat As = A / std::ldexp(1.0, squarings);

  const Mat I = Mat::Identity(n, n);
  const Mat A2 = As * As;
  const Mat A4 = A2 * A2;
  const Mat A6 = A4 * A2;

  const Mat U = As * (A6 * (kB[13] * A6 + kB[11] * A4 + kB[9] * A2) +
                      kB[7] * A6 + kB[5] * A4 + kB[3] * A2 + kB[1] * I);
  const Mat V = A6 * (kB[12] * A6 + kB[10] * A4 + kB[8] * A2) +
                kB[6] * A6 + kB[4] * A4 + kB[2] * A2 + kB[0] * I;

  Mat R = (V - U).partialPivLu().solve(V + U);
  for (int s = 0; s < squarings; ++s) R = R * R;
  return R;
}

Vec affine_flow(const Mat& A, const Vec& b, const Vec& y0, double t) {
  const Eigen::Index n = A.rows();
  require(A.cols() == n && b.size() == n && y0.size() == n, Err::Dim,
          "affine_flow dimension mismatch");
  Mat aug = Mat::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = t * A;
  aug.topRightCorner(n, 1) = t * b;
  const Mat E = expm(aug);
  return E.topLeftCorner(n, n) * y0 + E.topRightCorner(n, 1);
}

}  // namespace nilflow
