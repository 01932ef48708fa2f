#include "nilflow/constructors.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "nilflow/jmap.hpp"

namespace nilflow {

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {
      "heisenberg3", "h3_plus_h3", "metivier5", "pseudoH_1_1", "hr_example", "ss_so3"};
  return names;
}

std::pair<StepTwoAlgebra, ScalarProduct> builtin(const std::string& name,
                                                 const Tolerances& tol) {
  auto diag = [](std::initializer_list<double> d) {
    Mat G = Mat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) G(i, i) = v, ++i;
    return G;
  };

  if (name == "heisenberg3") {
    auto A = StepTwoAlgebra::from_terms(3, {"X", "Y", "Z"}, {{0, 1, 2, 1.0}}, tol);
    return {std::move(A), ScalarProduct::from_gram(Mat::Identity(3, 3), tol)};
  }
  if (name == "h3_plus_h3") {
    auto A = StepTwoAlgebra::from_terms(6, {"X1", "Y1", "Z1", "X2", "Y2", "Z2"},
                                        {{0, 1, 2, 1.0}, {3, 4, 5, 1.0}}, tol);
    return {std::move(A), ScalarProduct::from_gram(Mat::Identity(6, 6), tol)};
  }
  if (name == "metivier5") {
    // Bracket signs chosen so the defining relation reproduces the reference
    // matrix j(Z) = [[0,1,0,0],[-1,0,0,0],[0,0,0,2],[0,0,-2,0]] on (X1,Y1,X2,Y2).
    auto A = StepTwoAlgebra::from_terms(5, {"X1", "Y1", "X2", "Y2", "Z"},
                                        {{0, 1, 4, -1.0}, {2, 3, 4, -2.0}}, tol);
    return {std::move(A), ScalarProduct::from_gram(Mat::Identity(5, 5), tol)};
  }
  if (name == "pseudoH_1_1") {
    // gram_v = diag(1,-1), <Z,Z> = -1, j(Z) = [[0,1],[1,0]].
    auto A = StepTwoAlgebra::from_terms(3, {"V1", "V2", "Z"}, {{0, 1, 2, 1.0}}, tol);
    return {std::move(A), ScalarProduct::from_gram(diag({1.0, -1.0, -1.0}), tol)};
  }
  if (name == "hr_example") {
    // Phi = j12(W) = diag(1,2) with signatures (1,1)/(1,1) and <W,W> = 1.
    auto A = StepTwoAlgebra::from_terms(5, {"U1_1", "U1_2", "U2_1", "U2_2", "W"},
                                        {{0, 2, 4, 1.0}, {1, 3, 4, -2.0}}, tol);
    return {std::move(A), ScalarProduct::from_gram(diag({1.0, -1.0, 1.0, -1.0, 1.0}), tol)};
  }
  if (name == "ss_so3") {
    // v = R^3 with the standard so(3) action, z = so(3), everything orthonormal.
    auto A = StepTwoAlgebra::from_terms(6, {"E1", "E2", "E3", "F1", "F2", "F3"},
                                        {{0, 1, 5, 1.0}, {0, 2, 4, -1.0}, {1, 2, 3, 1.0}},
                                        tol);
    return {std::move(A), ScalarProduct::from_gram(Mat::Identity(6, 6), tol)};
  }
  fail(Err::UnknownName, "unknown catalog entry '" + name + "'");
}

// ---------------------------------------------------------------------------
// Heisenberg-Reiter
// ---------------------------------------------------------------------------

HRBuild build_heisenberg_reiter(const HRData& H, const Tolerances& tol) {
  require(H.m1 >= 1 && H.m2 >= 1 && H.dim_w >= 1, Err::Params,
          "u1, u2 and w must be nontrivial");
  require(H.sig1.dim() == H.m1 && H.sig2.dim() == H.m2 && H.sig_w.dim() == H.dim_w,
          Err::SignatureMismatch, "declared signatures must match the block dimensions");
  require(static_cast<int>(H.bilinear.size()) == H.dim_w, Err::Dim,
          "bilinear tensor must supply dim_w slices");
  for (const auto& slice : H.bilinear)
    require(slice.rows() == H.m1 && slice.cols() == H.m2, Err::Dim,
            "bilinear slices must be m1 x m2");

  const int d = H.m1 + H.m2 + H.dim_w;
  std::vector<std::string> labels;
  for (int a = 0; a < H.m1; ++a) labels.push_back("U1_" + std::to_string(a + 1));
  for (int b = 0; b < H.m2; ++b) labels.push_back("U2_" + std::to_string(b + 1));
  for (int c = 0; c < H.dim_w; ++c) labels.push_back("W" + std::to_string(c + 1));

  std::vector<BracketTerm> terms;
  for (int a = 0; a < H.m1; ++a)
    for (int b = 0; b < H.m2; ++b)
      for (int c = 0; c < H.dim_w; ++c) {
        const double v = H.bilinear[static_cast<size_t>(c)](a, b);
        if (v != 0.0) terms.push_back({a, H.m1 + b, H.m1 + H.m2 + c, v});
      }

  Mat G = Mat::Zero(d, d);
  auto fill = [&G](int off, Signature s) {
    for (int i = 0; i < s.pos; ++i) G(off + i, off + i) = 1.0;
    for (int i = 0; i < s.neg; ++i) G(off + s.pos + i, off + s.pos + i) = -1.0;
  };
  fill(0, H.sig1);
  fill(H.m1, H.sig2);
  fill(H.m1 + H.m2, H.sig_w);

  auto algebra = StepTwoAlgebra::from_terms(d, labels, terms, tol);
  auto product = ScalarProduct::from_gram(G, tol);
  auto splitting = Splitting::make(algebra, product, tol);
  HRBuild out{std::move(algebra), std::move(product), std::move(splitting), Mat(), Mat()};

  // v_i = u_i with the null directions u_i° removed; u_i° joins the centre.
  auto v_embed = [&](int off, int mi, bool left) {
    Mat pairing(H.m2 * H.dim_w * (left ? 1 : 0) + H.m1 * H.dim_w * (left ? 0 : 1), mi);
    int r = 0;
    if (left) {
      for (int b = 0; b < H.m2; ++b)
        for (int c = 0; c < H.dim_w; ++c, ++r)
          for (int a = 0; a < mi; ++a) pairing(r, a) = H.bilinear[static_cast<size_t>(c)](a, b);
    } else {
      for (int a = 0; a < H.m1; ++a)
        for (int c = 0; c < H.dim_w; ++c, ++r)
          for (int b = 0; b < mi; ++b) pairing(r, b) = H.bilinear[static_cast<size_t>(c)](a, b);
    }
    const Mat ring = kernel_basis(pairing, tol.rank);          // u_i° in u_i coords
    Mat sub = G.block(off, off, mi, mi);
    const Mat vi = kernel_basis(ring.transpose() * sub, tol.rank);  // v_i in u_i coords
    Mat amb = Mat::Zero(d, vi.cols());
    amb.block(off, 0, mi, vi.cols()) = vi;
    return amb;
  };
  out.v1 = v_embed(0, H.m1, true);
  out.v2 = v_embed(H.m1, H.m2, false);

  // Standing assumption of the construction: the restrictions to v_i stay
  // non-degenerate.
  for (const Mat* vi : {&out.v1, &out.v2}) {
    if (vi->cols() == 0) continue;
    try {
      signature_of(vi->transpose() * G * (*vi), tol.rank);
    } catch (const Error&) {
      fail(Err::SignatureMismatch, "metric degenerate on v_i");
    }
  }

  // Cross-check the block form of j(Z) for Z in w against the defining relation.
  if (out.v1.cols() > 0 && out.v2.cols() > 0) {
    const Mat G1 = out.v1.transpose() * G * out.v1;
    const Mat G2 = out.v2.transpose() * G * out.v2;
    for (int c = 0; c < H.dim_w; ++c) {
      const Vec Zc = Vec::Unit(d, H.m1 + H.m2 + c);
      Mat R(out.v1.cols(), out.v2.cols());
      for (Eigen::Index a = 0; a < out.v1.cols(); ++a)
        for (Eigen::Index b = 0; b < out.v2.cols(); ++b)
          R(a, b) = Zc.dot(G * out.algebra.bracket(out.v1.col(a), out.v2.col(b)));
      const Mat j12 = G1.partialPivLu().solve(R);
      const Mat j21 = G2.partialPivLu().solve(R.transpose());
      const Mat J = j_operator(out.splitting, Zc).matrix;
      auto apply_ambient = [&](const Vec& x) {
        return Vec(out.splitting.complement_basis() * (J * out.splitting.v_coords(x)));
      };
      double residual = 0.0;
      for (Eigen::Index b = 0; b < out.v2.cols(); ++b) {
        const Vec want = -out.v1 * j12.col(b);  // j(Z)|_{v2 -> v1} = -j12
        residual = std::max(residual, (apply_ambient(out.v2.col(b)) - want).norm());
      }
      for (Eigen::Index a = 0; a < out.v1.cols(); ++a) {
        const Vec want = out.v2 * j21.col(a);  // j(Z)|_{v1 -> v2} = +j21
        residual = std::max(residual, (apply_ambient(out.v1.col(a)) - want).norm());
      }
      const double scale =
          std::max(1.0, std::max(j12.cwiseAbs().maxCoeff(), j21.cwiseAbs().maxCoeff()));
      require(residual <= 1e3 * tol.num * scale, Err::Skew,
              "assembled j(Z) does not match the off-diagonal block form");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// indefinite SVD
// ---------------------------------------------------------------------------

namespace {

Mat signature_diag(Signature s) {
  Mat E = Mat::Zero(s.dim(), s.dim());
  for (int i = 0; i < s.pos; ++i) E(i, i) = 1.0;
  for (int i = 0; i < s.neg; ++i) E(s.pos + i, s.pos + i) = -1.0;
  return E;
}

struct EigVecEntry {
  double lambda = 0.0;
  Vec vec;  // pseudo-normalized, <v,v> = +-1
  int norm_sign = 0;
};

// Pseudo-orthonormalize the columns of W against the form eta, pivoting on
// |<x,x>| over the columns and their pairwise sums (the sums catch bases whose
// diagonal self-products all vanish). Near-null pivots mean a numerically
// degenerate restriction.
std::vector<EigVecEntry> indefinite_gs(Mat W, const Mat& eta, double lambda, double tau) {
  std::vector<EigVecEntry> out;
  const Eigen::Index count = W.cols();
  for (Eigen::Index step = 0; step < count; ++step) {
    Vec pivot;
    double best = 0.0;
    for (Eigen::Index c = 0; c < W.cols(); ++c) {
      const double self = std::abs(W.col(c).dot(eta * W.col(c)));
      if (self > best) best = self, pivot = W.col(c);
      for (Eigen::Index c2 = c + 1; c2 < W.cols(); ++c2) {
        const Vec sum = (W.col(c) + W.col(c2)) / std::sqrt(2.0);
        const double s2v = std::abs(sum.dot(eta * sum));
        if (s2v > best) best = s2v, pivot = sum;
      }
    }
    require(best > tau, Err::NotDiagonalizable,
            "eigenspace metric is numerically degenerate");
    const double self = pivot.dot(eta * pivot);
    EigVecEntry e;
    e.lambda = lambda;
    e.norm_sign = self > 0 ? 1 : -1;
    e.vec = pivot / std::sqrt(std::abs(self));
    out.push_back(e);

    // Project the pivot out of the span, then re-orthonormalize (Euclidean)
    // to keep an exact basis of the one-smaller residual subspace.
    Mat projected = W;
    for (Eigen::Index c = 0; c < W.cols(); ++c)
      projected.col(c) -=
          static_cast<double>(e.norm_sign) * (W.col(c).dot(eta * e.vec)) * e.vec;
    Eigen::ColPivHouseholderQR<Mat> qr(projected);
    const Mat Q = qr.householderQ();
    W = Q.leftCols(W.cols() - 1);
  }
  return out;
}

}  // namespace

IndefSVDResult indefinite_svd(const Mat& phi, Signature s1, Signature s2,
                              const Tolerances& tol) {
  const int m1 = static_cast<int>(phi.rows());
  const int m2 = static_cast<int>(phi.cols());
  require(m1 >= 1 && m2 >= 1, Err::Dim, "Phi must be a nonempty matrix");
  require(s1.dim() == m1 && s2.dim() == m2, Err::Dim,
          "signature dimensions must match the operator shape");
  const Mat eta1 = signature_diag(s1);
  const Mat eta2 = signature_diag(s2);

  // Hypothesis: Im(Phi) non-degenerate in (v1, eta1).
  const int rank_phi = rank_of(phi, tol.rank);
  if (rank_phi > 0) {
    const Mat C = image_basis(phi, tol.rank);
    try {
      signature_of(C.transpose() * eta1 * C, tol.rank);
    } catch (const Error&) {
      fail(Err::DegenerateImage, "Gram of Im(Phi) is singular");
    }
  }

  // Hypothesis: Phi*Phi real-diagonalizable (Phi* is the eta-adjoint).
  const Mat T = eta2 * phi.transpose() * eta1 * phi;
  const double scale_T = std::max(1.0, T.norm());
  Eigen::EigenSolver<Mat> es(T, /*computeEigenvectors=*/false);
  require(es.info() == Eigen::Success, Err::NotDiagonalizable, "eigensolver failed");
  std::vector<double> lambdas;
  for (int i = 0; i < m2; ++i) {
    const Complex z = es.eigenvalues()(i);
    require(std::abs(z.imag()) <= tol.spec * scale_T, Err::NotDiagonalizable,
            "Phi*Phi has complex eigenvalues");
    lambdas.push_back(z.real());
  }
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());

  struct Cluster {
    double sum = 0.0;
    int mult = 0;
    double mean() const { return sum / mult; }
  };
  std::vector<Cluster> clusters;
  for (double lv : lambdas) {
    if (!clusters.empty() && std::abs(clusters.back().mean() - lv) <= 2 * tol.spec * scale_T) {
      clusters.back().sum += lv;
      ++clusters.back().mult;
    } else {
      clusters.push_back({lv, 1});
    }
  }

  std::vector<EigVecEntry> entries;
  const Mat I2 = Mat::Identity(m2, m2);
  for (const auto& c : clusters) {
    const Mat K = kernel_basis(T - c.mean() * I2, tol.rank);
    require(static_cast<int>(K.cols()) == c.mult, Err::NotDiagonalizable,
            "Phi*Phi has a defective eigenvalue");
    const double lam = std::abs(c.mean()) <= tol.rank * scale_T ? 0.0 : c.mean();
    for (auto& e : indefinite_gs(K, eta2, lam, tol.rank)) entries.push_back(std::move(e));
  }

  // B-slot convention: +1-norm vectors first (lambda > 0, then < 0, then 0),
  // -1-norm after (lambda < 0, then > 0, then 0); largest |lambda| first per class.
  auto pick = [&entries](int sign, int cat) {  // cat: 0 positive, 1 negative, 2 zero lambda
    std::vector<EigVecEntry> group;
    for (const auto& e : entries) {
      const int c = e.lambda > 0 ? 0 : (e.lambda < 0 ? 1 : 2);
      if (e.norm_sign == sign && c == cat) group.push_back(e);
    }
    std::stable_sort(group.begin(), group.end(), [](const auto& a, const auto& b) {
      return std::abs(a.lambda) > std::abs(b.lambda);
    });
    return group;
  };
  const auto cat_d1 = pick(+1, 0);
  const auto cat_d2 = pick(+1, 1);
  const auto cat_pz = pick(+1, 2);
  const auto cat_d3 = pick(-1, 1);
  const auto cat_d4 = pick(-1, 0);
  const auto cat_nz = pick(-1, 2);

  IndefSVDResult R;
  R.d1 = static_cast<int>(cat_d1.size());
  R.d2 = static_cast<int>(cat_d2.size());
  R.d3 = static_cast<int>(cat_d3.size());
  R.d4 = static_cast<int>(cat_d4.size());
  R.rank = R.d1 + R.d2 + R.d3 + R.d4;
  require(R.rank == rank_phi, Err::DegenerateImage,
          "rank of Phi*Phi disagrees with rank of Phi (degenerate image)");
  require(static_cast<int>(cat_d1.size() + cat_d2.size() + cat_pz.size()) == s2.pos,
          Err::NotDiagonalizable, "eigenbasis signature does not match eta2");

  R.basisB = Mat(m2, m2);
  R.lambda = Vec(m2);
  {
    int col = 0;
    for (const auto* group : {&cat_d1, &cat_d2, &cat_pz, &cat_d3, &cat_d4, &cat_nz})
      for (const auto& e : *group) {
        R.basisB.col(col) = e.vec;
        R.lambda(col) = e.lambda;
        ++col;
      }
  }
  for (const auto& e : cat_d1) R.D1.push_back(std::sqrt(std::abs(e.lambda)));
  for (const auto& e : cat_d2) R.D2.push_back(std::sqrt(std::abs(e.lambda)));
  for (const auto& e : cat_d3) R.D3.push_back(std::sqrt(std::abs(e.lambda)));
  for (const auto& e : cat_d4) R.D4.push_back(std::sqrt(std::abs(e.lambda)));

  // A_i = Phi(B_i)/sqrt|lambda_i| placed at the displayed slots.
  const int p1 = s1.pos;
  R.basisA = Mat::Zero(m1, m1);
  std::vector<bool> a_filled(static_cast<size_t>(m1), false);
  std::vector<int> a_sign(static_cast<size_t>(m1), 0);
  auto place = [&](const std::vector<EigVecEntry>& group, int slot0, int sign) {
    int slot = slot0;
    for (const auto& e : group) {
      R.basisA.col(slot) = phi * e.vec / std::sqrt(std::abs(e.lambda));
      a_filled[static_cast<size_t>(slot)] = true;
      a_sign[static_cast<size_t>(slot)] = sign;
      ++slot;
    }
  };
  place(cat_d1, 0, +1);
  place(cat_d3, R.d1, +1);
  place(cat_d2, p1, -1);
  place(cat_d4, p1 + R.d2, -1);

  // Extend to a full pseudo-orthonormal basis of v1: Euclidean complement of
  // the placed columns, eta1-projected, then pivoted Gram-Schmidt.
  {
    Mat placed(m1, R.rank);
    int c = 0;
    for (int i = 0; i < m1; ++i)
      if (a_filled[static_cast<size_t>(i)]) placed.col(c++) = R.basisA.col(i);
    Mat candidates;
    if (R.rank == 0) {
      candidates = Mat::Identity(m1, m1);
    } else {
      Eigen::HouseholderQR<Mat> qr(placed);
      const Mat Q = qr.householderQ();
      candidates = Q.rightCols(m1 - R.rank);
    }
    for (Eigen::Index c2 = 0; c2 < candidates.cols(); ++c2) {
      for (int i = 0; i < m1; ++i) {
        if (!a_filled[static_cast<size_t>(i)]) continue;
        const double sgn = a_sign[static_cast<size_t>(i)];
        candidates.col(c2) -=
            sgn * (candidates.col(c2).dot(eta1 * R.basisA.col(i))) * R.basisA.col(i);
      }
    }
    auto extension = indefinite_gs(candidates, eta1, 0.0, tol.rank);
    int pos_slot = R.d1 + R.d3;
    int neg_slot = p1 + R.d2 + R.d4;
    for (const auto& e : extension) {
      int& slot = (e.norm_sign > 0) ? pos_slot : neg_slot;
      const int limit = (e.norm_sign > 0) ? p1 : m1;
      require(slot < limit, Err::NotDiagonalizable,
              "basis extension signature does not match eta1");
      R.basisA.col(slot) = e.vec;
      a_sign[static_cast<size_t>(slot)] = e.norm_sign;
      ++slot;
    }
    require(pos_slot == p1 && neg_slot == m1, Err::NotDiagonalizable,
            "basis extension signature does not match eta1");
  }

  // Result invariants: Gram conditions and the sparse reconstruction pattern.
  const Mat std1 = signature_diag(s1);
  const Mat std2 = signature_diag(s2);
  const double gramA = (R.basisA.transpose() * eta1 * R.basisA - std1).cwiseAbs().maxCoeff();
  const double gramB = (R.basisB.transpose() * eta2 * R.basisB - std2).cwiseAbs().maxCoeff();
  require(gramA <= tol.num * 1e2 && gramB <= tol.num * 1e2, Err::NotDiagonalizable,
          "pseudo-orthonormalization lost accuracy");
  R.reconstructed = std1 * R.basisA.transpose() * eta1 * phi * R.basisB;
  return R;
}

HRWilliamson hr_williamson(const IndefSVDResult& R, int m1, int m2) {
  HRWilliamson W;
  W.k_e = R.d1 + R.d4;
  W.k_h = R.d2 + R.d3;
  W.k_f = 0;
  const int zeros = m1 + m2 - 2 * R.rank;
  W.zero_pairs = zeros / 2;
  W.unpaired_zero = zeros % 2;
  return W;
}

// ---------------------------------------------------------------------------
// semi-simple modules
// ---------------------------------------------------------------------------

std::pair<StepTwoAlgebra, ScalarProduct> build_semisimple_module(
    const SemisimpleModuleData& D, const Tolerances& tol) {
  const int dv = D.dim_v, dz = D.dim_z;
  const int d = dv + dz;
  require(dv >= 0 && dz >= 1 && D.gram.rows() == d && D.gram.cols() == d, Err::Dim,
          "inconsistent module dimensions");
  require(static_cast<int>(D.rep.size()) == dz, Err::Dim,
          "one representation matrix per centre basis vector required");
  for (const auto& r : D.rep)
    require(r.rows() == dv && r.cols() == dv, Err::Dim, "representation matrices must act on v");

  Signature sig;
  try {
    sig = signature_of(D.gram, tol.rank);
  } catch (const Error&) {
    fail(Err::Definite, "inner product is degenerate");
  }
  require(sig.positive_definite() && sig.pos == d, Err::Definite,
          "inner product must be positive-definite");

  const double gs = std::max(1.0, D.gram.cwiseAbs().maxCoeff());
  // E1: v and z orthogonal.
  if (dv > 0 && dz > 0)
    require(D.gram.block(0, dv, dv, dz).cwiseAbs().maxCoeff() <= tol.num * gs, Err::Conditions,
            "E1 violated: v and z are not orthogonal");
  const Mat Gv = D.gram.topLeftCorner(dv, dv);
  const Mat Gz = D.gram.bottomRightCorner(dz, dz);

  // E2: every j(Z_c) skew with respect to the inner product on v.
  for (const auto& r : D.rep) {
    const Mat GJ = Gv * r;
    const double scale = std::max(1.0, GJ.cwiseAbs().maxCoeff());
    require((GJ + GJ.transpose()).cwiseAbs().maxCoeff() <= tol.num * scale, Err::Conditions,
            "E2 violated: representation is not skew-symmetric");
  }

  // E3: the z-bracket acts skew-adjointly on z.
  std::vector<Mat> adz(static_cast<size_t>(dz), Mat::Zero(dz, dz));
  for (const auto& t : D.bracket_z) {
    require(0 <= t.i && t.i < t.j && t.j < dz && 0 <= t.k && t.k < dz, Err::Schema,
            "bracket_z indices out of range");
    adz[static_cast<size_t>(t.i)](t.k, t.j) += t.c;
    adz[static_cast<size_t>(t.j)](t.k, t.i) -= t.c;
  }
  for (const auto& a : adz) {
    const Mat GA = Gz * a;
    const double scale = std::max(1.0, std::max(GA.cwiseAbs().maxCoeff(), 1.0));
    require((GA + GA.transpose()).cwiseAbs().maxCoeff() <= tol.num * scale, Err::Conditions,
            "E3 violated: z-bracket is not skew-adjoint for the inner product");
  }

  // Solve <[V_a, V_b], Z_c> = <j(Z_c) V_a, V_b> for the structure constants.
  std::vector<BracketTerm> terms;
  const auto Gz_lu = Gz.partialPivLu();
  for (int a = 0; a < dv; ++a)
    for (int b = a + 1; b < dv; ++b) {
      Vec rhs(dz);
      for (int c = 0; c < dz; ++c)
        rhs(c) = (D.rep[static_cast<size_t>(c)].col(a)).dot(Gv.col(b));
      const Vec x = Gz_lu.solve(rhs);
      for (int c = 0; c < dz; ++c)
        if (x(c) != 0.0) terms.push_back({a, b, dv + c, x(c)});
    }

  std::vector<std::string> labels;
  for (int i = 0; i < dv; ++i) labels.push_back("V" + std::to_string(i + 1));
  for (int c = 0; c < dz; ++c) labels.push_back("Z" + std::to_string(c + 1));
  auto algebra = StepTwoAlgebra::from_terms(d, labels, terms, tol);
  auto product = ScalarProduct::from_gram(D.gram, tol);

  // Round trip: the j-mapping of the built algebra is the supplied module.
  const Splitting S = Splitting::make(algebra, product, tol);
  if (S.dim_v() == dv) {
    for (int c = 0; c < dz; ++c) {
      const Mat J = j_operator(S, Vec::Unit(d, dv + c)).matrix;
      Mat Jamb = S.complement_basis() * J * S.complement_basis().transpose();
      Mat Ramb = Mat::Zero(d, d);
      Ramb.topLeftCorner(dv, dv) = D.rep[static_cast<size_t>(c)];
      const double scale = std::max(1.0, Ramb.cwiseAbs().maxCoeff());
      require((Jamb - Ramb).cwiseAbs().maxCoeff() <= 1e2 * tol.num * scale, Err::Skew,
              "built algebra does not reproduce the module representation");
    }
  }
  return {std::move(algebra), std::move(product)};
}

}  // namespace nilflow
