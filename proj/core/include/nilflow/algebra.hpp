#pragma once

#include <string>
#include <vector>

#include "nilflow/errors.hpp"
#include "nilflow/linalg.hpp"
#include "nilflow/types.hpp"

namespace nilflow {

/// One declared bracket contribution [e_i, e_j] += c e_k with i < j.
struct BracketTerm {
  int i = 0;
  int j = 0;
  int k = 0;
  double c = 0.0;
};

/// A step-two nilpotent Lie algebra over a declared basis. Structure constants
/// are stored exactly as given; Jacobi and step-two are validated at
/// construction, never repaired.
class StepTwoAlgebra {
 public:
  StepTwoAlgebra() = default;  // empty placeholder; build through from_terms

  static StepTwoAlgebra from_terms(int dim, std::vector<std::string> labels,
                                   std::vector<BracketTerm> terms,
                                   const Tolerances& tol = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<BracketTerm>& terms() const { return terms_; }

  /// Matrix of ad_{e_i} : Y -> [e_i, Y].
  const Mat& ad(int i) const { return ad_[static_cast<size_t>(i)]; }

  Vec bracket(const Vec& x, const Vec& y) const;

  double max_constant() const { return cmax_; }
  bool abelian() const { return cmax_ == 0.0; }

 private:
  int dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<BracketTerm> terms_;
  std::vector<Mat> ad_;
  double cmax_ = 0.0;
};

/// Non-degenerate symmetric bilinear form with its signature.
struct ScalarProduct {
  Mat gram;
  Signature sig;

  static ScalarProduct from_gram(Mat gram, const Tolerances& tol = {});

  double inner(const Vec& x, const Vec& y) const { return x.dot(gram * y); }
};

/// Euclidean-orthonormal basis (columns) of the centre {X : [X, g] = 0},
/// computed from structure constants only. Prefers declared basis vectors when
/// they already span the centre, so reports stay in user coordinates.
Mat compute_center(const StepTwoAlgebra& A, double tau_rank);

/// The orthogonal decomposition g = v (+) z with restricted Gram matrices.
class Splitting {
 public:
  static Splitting make(StepTwoAlgebra algebra, ScalarProduct product,
                        const Tolerances& tol = {});

  const StepTwoAlgebra& algebra() const { return algebra_; }
  const ScalarProduct& product() const { return product_; }
  const Tolerances& tol() const { return tol_; }

  int dim() const { return algebra_.dim(); }
  int dim_v() const { return static_cast<int>(complement_.cols()); }
  int dim_z() const { return static_cast<int>(center_.cols()); }

  const Mat& center_basis() const { return center_; }
  const Mat& complement_basis() const { return complement_; }
  const Mat& gram_z() const { return gram_z_; }
  const Mat& gram_v() const { return gram_v_; }
  Signature sig_z() const { return sig_z_; }
  Signature sig_v() const { return sig_v_; }

  /// Coordinates of the v / z components in the complement / centre bases.
  Vec v_coords(const Vec& Y) const;
  Vec z_coords(const Vec& Y) const;
  /// Ambient projections Y_v and Y_z.
  Vec v_part(const Vec& Y) const { return complement_ * v_coords(Y); }
  Vec z_part(const Vec& Y) const { return center_ * z_coords(Y); }
  /// Ambient vector from component coordinates.
  Vec from_v(const Vec& coords) const { return complement_ * coords; }
  Vec from_z(const Vec& coords) const { return center_ * coords; }

  double inner(const Vec& x, const Vec& y) const { return product_.inner(x, y); }

 private:
  Splitting() = default;

  StepTwoAlgebra algebra_;
  ScalarProduct product_;
  Mat center_;
  Mat complement_;
  Mat gram_z_;
  Mat gram_v_;
  Signature sig_z_;
  Signature sig_v_;
  Eigen::PartialPivLU<Mat> frame_lu_;  // LU of [complement | center]
  Tolerances tol_;
};

/// Matrix (ambient coordinates) of Y -> (ad_U)^T Y, the adjoint of ad_U with
/// respect to the scalar product. Cross-checked against the closed form
/// (ad_U)^T Y = j(Y_z) U_v before returning.
Mat ad_transpose(const Splitting& S, const Vec& U);

}  // namespace nilflow
