#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>

namespace nilflow {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline constexpr const char* kVersion = "0.1.0";

/// Signature (p,q) of a non-degenerate symmetric bilinear form.
struct Signature {
  int pos = 0;
  int neg = 0;

  int dim() const { return pos + neg; }
  bool definite() const { return pos == 0 || neg == 0; }
  bool positive_definite() const { return neg == 0; }
  bool operator==(const Signature&) const = default;
};

/// Tolerance set threaded through every numerical decision.
///  - alg:  algebraic identities evaluated on the supplied structure constants
///  - rank: relative dead band for rank / kernel / signature tests
///  - num:  relative tolerance for derived numerical identities
///  - spec: relative dead band for eigenvalue classification
struct Tolerances {
  double alg = 1e-10;
  double rank = 1e-10;
  double num = 1e-9;
  double spec = 1e-8;
};

}  // namespace nilflow
