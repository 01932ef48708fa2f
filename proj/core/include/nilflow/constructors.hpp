#pragma once

#include <string>
#include <utility>
#include <vector>

#include "nilflow/algebra.hpp"

namespace nilflow {

/// Names of the built-in catalog entries.
const std::vector<std::string>& catalog_names();

/// Catalog entry with its canonical metric. E_UNKNOWN_NAME otherwise.
std::pair<StepTwoAlgebra, ScalarProduct> builtin(const std::string& name,
                                                 const Tolerances& tol = {});

/// Heisenberg-Reiter data: g = u1 (+) u2 (+) w with bracket
/// [(U1,U2,W), (U1',U2',W')] = (0, 0, B(U1,U2') - B(U2,U1')).
/// bilinear[c](a,b) is the W_c-coefficient of B(U1_a, U2_b). The metric is
/// block diagonal with the declared signatures.
struct HRData {
  int m1 = 0;
  int m2 = 0;
  int dim_w = 0;
  Signature sig1, sig2, sig_w;
  std::vector<Mat> bilinear;  // dim_w matrices of shape m1 x m2
};

struct HRBuild {
  StepTwoAlgebra algebra;
  ScalarProduct product;
  Splitting splitting;
  Mat v1;  // ambient embedding of v1 = v ∩ u1, columns
  Mat v2;  // ambient embedding of v2 = v ∩ u2
};

/// Assemble the algebra, validate the declared signatures against the
/// computed splitting (E_SIGNATURE on mismatch) and cross-check the
/// off-diagonal block form of j(Z) for Z in w.
HRBuild build_heisenberg_reiter(const HRData& H, const Tolerances& tol = {});

/// Indefinite singular value decomposition of Phi : (v2, eta2) -> (v1, eta1).
/// basisB diagonalizes Phi* Phi into a pseudo-orthonormal eigenbasis; basisA
/// is Phi(B_i)/sqrt|lambda_i| extended to a pseudo-orthonormal basis of v1.
/// d1/d2 count positive/negative eigenvalues on +1-norm eigenvectors, d3/d4
/// negative/positive eigenvalues on -1-norm eigenvectors; r = d1+d2+d3+d4.
struct IndefSVDResult {
  Mat basisA;         // m1 x m1
  Mat basisB;         // m2 x m2
  Vec lambda;         // eigenvalue of Phi*Phi per basisB column
  std::vector<double> D1, D2, D3, D4;  // sqrt|lambda| per class
  int d1 = 0, d2 = 0, d3 = 0, d4 = 0;
  int rank = 0;
  Mat reconstructed;  // Phi expressed in (basisA, basisB)
};

IndefSVDResult indefinite_svd(const Mat& phi, Signature s1, Signature s2,
                              const Tolerances& tol = {});

struct HRWilliamson {
  int k_e = 0, k_h = 0, k_f = 0;
  int zero_pairs = 0;
  int unpaired_zero = 0;
};

/// Williamson type (d1+d4, d2+d3, 0) of the equilibrium Y_v = 0 plus the zero
/// pair count (m1 + m2 - 2r)/2.
HRWilliamson hr_williamson(const IndefSVDResult& R, int m1, int m2);

/// Step-two algebra arising from a module over a semi-simple z: dim_v, the
/// representation matrices j(Z_c), the z-bracket used only to validate (E3),
/// and a positive-definite ambient inner product with v ⊥ z (E1) under which
/// every j(Z_c) is skew (E2).
struct SemisimpleModuleData {
  int dim_v = 0;
  int dim_z = 0;
  std::vector<Mat> rep;                // dim_z matrices of shape dim_v x dim_v
  std::vector<BracketTerm> bracket_z;  // indices within 0..dim_z-1
  Mat gram;                            // (dim_v+dim_z) square, positive-definite
};

std::pair<StepTwoAlgebra, ScalarProduct> build_semisimple_module(
    const SemisimpleModuleData& D, const Tolerances& tol = {});

}  // namespace nilflow
