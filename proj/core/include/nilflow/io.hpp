#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "nilflow/algebra.hpp"
#include "nilflow/dynamics.hpp"

namespace nilflow {

/// Parse an algebra-spec document:
///   { "dim": d, "basis": [d names], "brackets": [{"i","j","out":[{"k","c"}]}],
///     "metric": d x d array }
/// Bracket entries require i < j; unknown keys are rejected (E_SCHEMA).
std::pair<StepTwoAlgebra, ScalarProduct> load_algebra(const std::string& json_text,
                                                      const Tolerances& tol = {});
std::pair<StepTwoAlgebra, ScalarProduct> load_algebra_file(const std::string& path,
                                                           const Tolerances& tol = {});

/// Serialize back to the algebra-spec schema (exact constants).
std::string algebra_to_json(const StepTwoAlgebra& A, const ScalarProduct& P);

/// Metric-blocks document: { "g11": [[..]], "g12": [[..]], "g21": [[..]], "g22": [[..]] },
/// validated against the splitting.
MetricBlocks load_blocks_file(const std::string& path, const Splitting& S);

/// Shortest round-trip decimal form (17 significant digits).
std::string format_double(double x);

/// Trajectory CSV: header t,Y_1..Y_d[,q_1..q_d],H,dH,dJ.
void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

/// Row-major matrix CSV: comma columns, newline rows.
void write_matrix_csv(std::ostream& os, const Mat& M);

}  // namespace nilflow
