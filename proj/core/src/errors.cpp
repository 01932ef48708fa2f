#include "nilflow/errors.hpp"

namespace nilflow {

const char* err_name(Err code) {
  switch (code) {
    case Err::Schema: return "E_SCHEMA";
    case Err::Jacobi: return "E_JACOBI";
    case Err::NotStep2: return "E_NOT_STEP2";
    case Err::Degenerate: return "E_DEGENERATE";
    case Err::Dim: return "E_DIM";
    case Err::CenterDegenerate: return "E_CENTER_DEGENERATE";
    case Err::ComplementDegenerate: return "E_COMPLEMENT_DEGENERATE";
    case Err::NotCentral: return "E_NOT_CENTRAL";
    case Err::Skew: return "E_SKEW";
    case Err::Pairing: return "E_PAIRING";
    case Err::Times: return "E_TIMES";
    case Err::Steps: return "E_STEPS";
    case Err::NotEquilibrium: return "E_NOT_EQUILIBRIUM";
    case Err::Params: return "E_PARAMS";
    case Err::FamilyMismatch: return "E_FAMILY_MISMATCH";
    case Err::UnknownName: return "E_UNKNOWN_NAME";
    case Err::SignatureMismatch: return "E_SIGNATURE";
    case Err::NotDiagonalizable: return "E_NOT_DIAGONALIZABLE";
    case Err::DegenerateImage: return "E_DEGENERATE_IMAGE";
    case Err::Conditions: return "E_CONDITIONS";
    case Err::Definite: return "E_DEFINITE";
    case Err::Io: return "E_IO";
  }
  return "E_UNKNOWN";
}

int err_exit_code(Err code) {
  switch (code) {
    case Err::NotDiagonalizable:
    case Err::Pairing:
    case Err::Skew:
    case Err::DegenerateImage:
      return 2;
    case Err::Io:
      return 3;
    default:
      return 1;
  }
}

}  // namespace nilflow
