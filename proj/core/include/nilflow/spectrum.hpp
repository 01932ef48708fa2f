#pragma once

#include <utility>
#include <vector>

#include "nilflow/jmap.hpp"
#include "nilflow/types.hpp"

namespace nilflow {

enum class Verdict { Stable, Unstable, Indeterminate };
const char* verdict_name(Verdict v);

/// Eigenvalue bookkeeping of a Hamiltonian-type real matrix.
///
/// Eigenvalues fall into the closed families
///   (1) +-mu i   (2) +-mu   (3) +-mu_r +- mu_i i   (4) 0,
/// counted as k_e pairs, k_h pairs, k_f quadruples and k_0 zero pairs, with
/// k_e + k_h + 2 k_f + k_0 = n = floor(size/2). Odd sizes carry exactly one
/// recorded unpaired zero.
struct SpectrumReport {
  std::vector<std::pair<Complex, int>> eigenvalues;  // cluster centre, multiplicity
  int k_e = 0;
  int k_h = 0;
  int k_f = 0;
  int k_0 = 0;
  int n = 0;
  int unpaired_zero = 0;
  bool semisimple = true;
  Verdict verdict = Verdict::Indeterminate;
};

/// Classify the spectrum of a real square matrix; fills everything except the
/// verdict. Throws E_PAIRING when the clusters cannot be matched into the four
/// families within tolerance.
SpectrumReport classify_eigenvalues(const Mat& M, const Tolerances& tol = {});

/// Unstable if k_h > 0 or k_f > 0; Stable if k_h = k_f = 0 and the matrix is
/// semisimple; Indeterminate otherwise (pure imaginary/zero spectrum with
/// nontrivial Jordan structure).
Verdict stability_verdict(const SpectrumReport& R);

/// Classify j(Z) on all of v and restricted to its invariant subspace Im j(Z).
/// Returns (full report, orbit report), both with verdicts filled in.
std::pair<SpectrumReport, SpectrumReport> williamson_on_orbit(const JOperator& J,
                                                              const Tolerances& tol = {});

}  // namespace nilflow
