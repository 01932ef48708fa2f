#pragma once

#include <cstdint>
#include <string>

#include "nilflow/algebra.hpp"

namespace nilflow {

/// The skew operator j(Z) on v, stored in the complement basis.
struct JOperator {
  Vec source_Z;  // ambient coordinates of Z
  Mat matrix;    // dim_v x dim_v
};

/// Solve <j(Z)V_a, V_b>_v = <Z, [V_a, V_b]>_z over the complement basis.
/// Z must lie in the centre subspace (E_NOT_CENTRAL otherwise).
JOperator j_operator(const Splitting& S, const Vec& Z);

/// j(Z) from coordinates in the computed centre basis.
JOperator j_operator_z(const Splitting& S, const Vec& z_coords);

/// Max residual of j(Z)^2 + <Z,Z>_z id over the polarization set
/// {Z_i} u {Z_i + Z_j, i<j} of the centre basis. Residual <= tau_num
/// certifies the pseudo-H relation.
double check_pseudo_h(const Splitting& S);

enum class Tristate { False, ProbablyTrue, True };
const char* tristate_name(Tristate t);

struct ClassReport {
  bool carnot = false;
  Tristate metivier = Tristate::False;
  bool h_type = false;
  bool pseudo_h_type = false;
  double pseudo_h_residual = 0.0;
  std::string evidence;
};

/// Classify the algebra. Metivier is certified true only for pseudo-H-type
/// with definite centre metric or dim z = 1; false always carries a singular
/// witness; otherwise `probes` seeded random directions yield probably_true.
ClassReport classify_algebra(const Splitting& S, int probes, uint64_t seed);

}  // namespace nilflow
