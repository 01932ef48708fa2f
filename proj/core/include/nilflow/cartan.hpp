#pragma once

#include <cstdint>
#include <vector>

#include "nilflow/spectrum.hpp"
#include "nilflow/types.hpp"

namespace nilflow {

enum class CartanFamily { D, Dprime, B };
const char* cartan_family_name(CartanFamily f);

/// Parameters of a canonical Cartan-subalgebra representative of so(p,q),
/// p <= q. Family D needs p+q even and 2(k+l) <= p; family B needs p+q odd
/// and 2(k+l)+1 <= p; family Dprime needs p = q = n even, l = 0, k = (n-2)/2.
/// n = (p+q)/2 rounded down; h holds the n subalgebra parameters.
struct CartanParams {
  CartanFamily family = CartanFamily::D;
  int p = 0;
  int q = 0;
  int ell = 0;
  int k = 0;
  std::vector<double> h;

  int n() const { return (p + q) / 2; }
};

/// Canonical matrix in so(p,q), skew with respect to eta = diag(E_p, -E_q)
/// in the assembled coordinate order.
struct CanonicalMatrix {
  Mat matrix;
  CartanParams params;
};

/// Assemble the canonical block matrix for the given family and parameters.
CanonicalMatrix cartan_matrix(const CartanParams& P);

struct PredictedType {
  int k_e = 0;
  int k_h = 0;
  int k_f = 0;
  bool rank_deficient = false;  // rank < 2n at the supplied h: type will differ
};

/// Williamson type predicted for a generic element of the family:
///   D:      (2l - p + n, p - 2l - 2k, k)
///   Dprime: (0, 0, n/2)
///   B:      (2l + 1 + n - p, p - 2l - 2k - 1, k)
/// The flag is set when the matrix generated at the supplied h has rank < 2n.
PredictedType predicted_williamson(const CartanParams& P);

struct CrossCheckReport {
  int trials = 0;
  int matches = 0;
  int skipped = 0;  // rank-deficient draws, comparison skipped
  std::vector<std::vector<double>> mismatched_h;
};

/// Draw `trials` generic h vectors (entries in [0.5, 2], distinct), classify
/// the generated matrix and compare against the predicted type with k_0 = 0.
CrossCheckReport cross_check(CartanParams P, int trials, uint64_t seed,
                             const Tolerances& tol = {});

}  // namespace nilflow
