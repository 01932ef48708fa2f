#include "nilflow/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace nilflow {

// ---------------------------------------------------------------------------
// linalg helpers
// ---------------------------------------------------------------------------

int rank_of(const Mat& M, double tau) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(M);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tau * s(0)) ++r;
  return r;
}

Mat kernel_basis(const Mat& M, double tau) {
  const Eigen::Index n = M.cols();
  if (n == 0) return Mat(M.cols(), 0);
  if (M.rows() == 0 || M.norm() == 0.0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tau * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

Mat image_basis(const Mat& M, double tau) {
  if (M.rows() == 0 || M.cols() == 0 || M.norm() == 0.0) return Mat(M.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(M, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tau * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

Signature signature_of(const Mat& M, double tau) {
  require(M.rows() == M.cols(), Err::Dim, "signature requires a square matrix");
  if (M.rows() == 0) return {0, 0};
  const Mat sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  require(es.info() == Eigen::Success, Err::Degenerate, "eigensolver failed");
  const Vec ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double band = tau * scale;
  Signature sig;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > band) {
      ++sig.pos;
    } else if (ev(i) < -band) {
      ++sig.neg;
    } else {
      std::ostringstream msg;
      msg << "eigenvalue " << ev(i) << " inside the dead band " << band;
      fail(Err::Degenerate, msg.str());
    }
  }
  return sig;
}

// ---------------------------------------------------------------------------
// StepTwoAlgebra
// ---------------------------------------------------------------------------

StepTwoAlgebra StepTwoAlgebra::from_terms(int dim, std::vector<std::string> labels,
                                          std::vector<BracketTerm> terms,
                                          const Tolerances& tol) {
  require(dim >= 1, Err::Schema, "dim must be positive");
  require(labels.empty() || static_cast<int>(labels.size()) == dim, Err::Schema,
          "basis label count must equal dim");
  if (labels.empty()) {
    for (int i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i + 1));
  }

  StepTwoAlgebra A;
  A.dim_ = dim;
  A.labels_ = std::move(labels);
  A.ad_.assign(static_cast<size_t>(dim), Mat::Zero(dim, dim));
  for (const auto& t : terms) {
    require(0 <= t.i && t.i < t.j && t.j < dim, Err::Schema,
            "bracket indices must satisfy 0 <= i < j < dim");
    require(0 <= t.k && t.k < dim, Err::Schema, "bracket output index out of range");
    A.ad_[static_cast<size_t>(t.i)](t.k, t.j) += t.c;
    A.ad_[static_cast<size_t>(t.j)](t.k, t.i) -= t.c;
    A.cmax_ = std::max(A.cmax_, std::abs(t.c));
  }
  A.terms_ = std::move(terms);

  // Quadratic identities scale with the square of the constants.
  const double scale = std::max(1.0, A.cmax_ * A.cmax_);

  double jacobi = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const Vec bij = A.ad_[static_cast<size_t>(i)].col(j);
      for (int k = j + 1; k < dim; ++k) {
        const Vec bjk = A.ad_[static_cast<size_t>(j)].col(k);
        const Vec bki = -A.ad_[static_cast<size_t>(i)].col(k);
        Vec res = Vec::Zero(dim);
        for (int t = 0; t < dim; ++t) {
          res += bij(t) * A.ad_[static_cast<size_t>(t)].col(k);
          res += bjk(t) * A.ad_[static_cast<size_t>(t)].col(i);
          res += bki(t) * A.ad_[static_cast<size_t>(t)].col(j);
        }
        jacobi = std::max(jacobi, res.cwiseAbs().maxCoeff());
      }
    }
  require(jacobi <= tol.alg * scale, Err::Jacobi,
          "Jacobi residual " + std::to_string(jacobi));

  double step2 = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const Vec w = A.ad_[static_cast<size_t>(i)].col(j);
      if (w.cwiseAbs().maxCoeff() == 0.0) continue;
      for (int k = 0; k < dim; ++k) {
        Vec res = Vec::Zero(dim);
        for (int t = 0; t < dim; ++t) res += w(t) * A.ad_[static_cast<size_t>(t)].col(k);
        step2 = std::max(step2, res.cwiseAbs().maxCoeff());
      }
    }
  require(step2 <= tol.alg * scale, Err::NotStep2,
          "[g,[g,g]] residual " + std::to_string(step2));

  return A;
}

Vec StepTwoAlgebra::bracket(const Vec& x, const Vec& y) const {
  require(x.size() == dim_ && y.size() == dim_, Err::Dim,
          "bracket arguments must have the algebra dimension");
  Vec r = Vec::Zero(dim_);
  for (int i = 0; i < dim_; ++i)
    if (x(i) != 0.0) r += x(i) * (ad_[static_cast<size_t>(i)] * y);
  return r;
}

// ---------------------------------------------------------------------------
// ScalarProduct
// ---------------------------------------------------------------------------

ScalarProduct ScalarProduct::from_gram(Mat gram, const Tolerances& tol) {
  require(gram.rows() == gram.cols(), Err::Schema, "metric must be square");
  const double asym = (gram - gram.transpose()).cwiseAbs().maxCoeff();
  require(asym <= 1e-12, Err::Schema, "metric must be symmetric to 1e-12");
  ScalarProduct P;
  P.sig = signature_of(gram, tol.rank);  // E_DEGENERATE on a singular gram
  P.gram = std::move(gram);
  return P;
}

// ---------------------------------------------------------------------------
// centre and splitting
// ---------------------------------------------------------------------------

Mat compute_center(const StepTwoAlgebra& A, double tau_rank) {
  const int d = A.dim();
  if (A.abelian()) return Mat::Identity(d, d);

  // Rows j of the stacked map X -> [X, e_j]; kernel = centre.
  Mat stacked(d * d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) stacked.block(j * d, i, d, 1) = A.ad(i).col(j);
  const Mat kernel = kernel_basis(stacked, tau_rank);

  // Prefer declared basis vectors when they already span the centre.
  const double band = tau_rank * std::max(1.0, A.max_constant());
  std::vector<int> axis;
  for (int i = 0; i < d; ++i) {
    if (A.ad(i).cwiseAbs().maxCoeff() <= band) axis.push_back(i);
  }
  if (static_cast<int>(axis.size()) == kernel.cols()) {
    Mat Z = Mat::Zero(d, static_cast<Eigen::Index>(axis.size()));
    for (size_t c = 0; c < axis.size(); ++c) Z(axis[c], static_cast<Eigen::Index>(c)) = 1.0;
    return Z;
  }
  return kernel;
}

Splitting Splitting::make(StepTwoAlgebra algebra, ScalarProduct product,
                          const Tolerances& tol) {
  require(product.gram.rows() == algebra.dim(), Err::Dim,
          "metric dimension must equal the algebra dimension");
  Splitting S;
  S.tol_ = tol;
  S.center_ = compute_center(algebra, tol.rank);
  const int d = algebra.dim();
  const int dz = static_cast<int>(S.center_.cols());

  S.gram_z_ = S.center_.transpose() * product.gram * S.center_;
  try {
    S.sig_z_ = signature_of(S.gram_z_, tol.rank);
  } catch (const Error& e) {
    fail(Err::CenterDegenerate, "metric restricted to the centre is singular");
  }

  // Complement v = z^perp through the metric; prefer declared basis vectors.
  const Mat pairing = S.center_.transpose() * product.gram;  // dz x d
  Mat complement;
  {
    const double band = tol.rank * std::max(1.0, product.gram.cwiseAbs().maxCoeff());
    std::vector<int> axis;
    for (int i = 0; i < d; ++i)
      if (dz == 0 || pairing.col(i).cwiseAbs().maxCoeff() <= band) axis.push_back(i);
    if (static_cast<int>(axis.size()) == d - dz) {
      complement = Mat::Zero(d, static_cast<Eigen::Index>(axis.size()));
      for (size_t c = 0; c < axis.size(); ++c)
        complement(axis[c], static_cast<Eigen::Index>(c)) = 1.0;
    } else {
      complement = kernel_basis(pairing, tol.rank);
    }
  }
  require(static_cast<int>(complement.cols()) == d - dz, Err::CenterDegenerate,
          "complement dimension mismatch (metric degenerate on the centre)");
  S.complement_ = std::move(complement);

  S.gram_v_ = S.complement_.transpose() * product.gram * S.complement_;
  try {
    S.sig_v_ = signature_of(S.gram_v_, tol.rank);
  } catch (const Error& e) {
    // cannot occur when gram_z is non-degenerate; kept as a cross-check
    fail(Err::ComplementDegenerate, "metric restricted to the complement is singular");
  }

  Mat frame(d, d);
  frame.leftCols(d - dz) = S.complement_;
  frame.rightCols(dz) = S.center_;
  S.frame_lu_ = Eigen::PartialPivLU<Mat>(frame);

  S.algebra_ = std::move(algebra);
  S.product_ = std::move(product);
  return S;
}

Vec Splitting::v_coords(const Vec& Y) const {
  require(Y.size() == dim(), Err::Dim, "vector length must equal the algebra dimension");
  return frame_lu_.solve(Y).head(dim_v());
}

Vec Splitting::z_coords(const Vec& Y) const {
  require(Y.size() == dim(), Err::Dim, "vector length must equal the algebra dimension");
  return frame_lu_.solve(Y).tail(dim_z());
}

// ---------------------------------------------------------------------------
// ad transpose
// ---------------------------------------------------------------------------

namespace {

// j(Z) applied to an ambient vector X_v, returned in ambient coordinates;
// solves <j(Z)X, V_b>_v = <Z, [X, V_b]> over the complement basis.
Vec apply_j(const Splitting& S, const Vec& Z, const Vec& Xv) {
  const int m = S.dim_v();
  Vec rhs(m);
  for (int b = 0; b < m; ++b)
    rhs(b) = Z.dot(S.product().gram * S.algebra().bracket(Xv, S.complement_basis().col(b)));
  const Vec coords = S.gram_v().partialPivLu().solve(rhs);
  return S.from_v(coords);
}

}  // namespace

Mat ad_transpose(const Splitting& S, const Vec& U) {
  const int d = S.dim();
  require(U.size() == d, Err::Dim, "vector length must equal the algebra dimension");
  const auto& G = S.product().gram;

  Mat adU = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    if (U(i) != 0.0) adU += U(i) * S.algebra().ad(i);

  // Defining relation <(ad_U)^T Y, W> = <Y, [U, W]>  =>  M = G^{-1} adU^T G.
  const Mat M = G.partialPivLu().solve(adU.transpose() * G);

  // Closed form (ad_U)^T Y = j(Y_z) U_v, column by column over the basis.
  const Vec Uv = S.v_part(U);
  Mat closed(d, d);
  for (int t = 0; t < d; ++t) {
    const Vec Yz = S.z_part(Vec::Unit(d, t));
    closed.col(t) = apply_j(S, Yz, Uv);
  }
  const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
  require((M - closed).cwiseAbs().maxCoeff() <= S.tol().num * scale, Err::Skew,
          "(ad_U)^T disagrees with the closed form j(Y_z)U_v");
  return M;
}

}  // namespace nilflow
