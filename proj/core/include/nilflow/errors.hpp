#pragma once

#include <stdexcept>
#include <string>

namespace nilflow {

enum class Err {
  Schema,                 // malformed input document
  Jacobi,                 // Jacobi identity violated
  NotStep2,               // [g,[g,g]] != 0
  Degenerate,             // singular gram / eigenvalue inside the dead band
  Dim,                    // vector/matrix dimension mismatch
  CenterDegenerate,       // restriction of the metric to the centre is singular
  ComplementDegenerate,   // restriction to the complement is singular
  NotCentral,             // vector not in the centre subspace
  Skew,                   // skew-symmetry consistency failure in the j solve
  Pairing,                // eigenvalues cannot be matched into the four families
  Times,                  // sample times not strictly increasing
  Steps,                  // step count < 1
  NotEquilibrium,         // probe base point is not an equilibrium
  Params,                 // parameter range violation
  FamilyMismatch,         // parity of p+q incompatible with the family
  UnknownName,            // unknown catalog entry
  SignatureMismatch,      // declared vs computed signature disagreement
  NotDiagonalizable,      // complex or defective spectrum where real-diagonalizable is required
  DegenerateImage,        // Gram of the operator image is singular
  Conditions,             // module conditions E1-E3 violated
  Definite,               // inner product not positive-definite where required
  Io,                     // file system failure
};

/// Stable textual code, e.g. "E_SCHEMA".
const char* err_name(Err code);

/// Process exit class: 1 validation, 2 numerical-hypothesis failure, 3 I/O.
int err_exit_code(Err code);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(std::string(err_name(code)) + ": " + message), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) { throw Error(code, message); }

inline void require(bool ok, Err code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace nilflow
