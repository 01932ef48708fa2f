#include "nilflow/jmap.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

namespace nilflow {

const char* tristate_name(Tristate t) {
  switch (t) {
    case Tristate::False: return "false";
    case Tristate::ProbablyTrue: return "probably_true";
    case Tristate::True: return "true";
  }
  return "?";
}

JOperator j_operator(const Splitting& S, const Vec& Z) {
  require(Z.size() == S.dim(), Err::Dim, "Z must have the algebra dimension");
  const double zn = Z.norm();
  const Vec Zz = S.z_part(Z);
  require((Z - Zz).norm() <= S.tol().num * std::max(1.0, zn), Err::NotCentral,
          "Z does not lie in the centre subspace");

  const int m = S.dim_v();
  const auto& V = S.complement_basis();
  const auto& G = S.product().gram;

  // C_ab = <Z, [V_a, V_b]>; the solve is M = gram_v^{-1} C^T.
  Mat C(m, m);
  for (int a = 0; a < m; ++a) {
    C(a, a) = 0.0;
    for (int b = a + 1; b < m; ++b) {
      const double v = Z.dot(G * S.algebra().bracket(V.col(a), V.col(b)));
      C(a, b) = v;
      C(b, a) = v == 0.0 ? 0.0 : -v;
    }
  }
  JOperator J;
  J.source_Z = Z;
  if (m == 0) {
    J.matrix = Mat(0, 0);
    return J;
  }
  J.matrix = S.gram_v().partialPivLu().solve(C.transpose());

  // gram_v * j(Z) must be antisymmetric; a large residual means the solve
  // went through a degenerate gram.
  const Mat GM = S.gram_v() * J.matrix;
  const double scale = std::max(1.0, max_abs(GM));
  require((GM + GM.transpose()).cwiseAbs().maxCoeff() <= S.tol().num * scale, Err::Skew,
          "j(Z) violates skew-symmetry");
  return J;
}

JOperator j_operator_z(const Splitting& S, const Vec& z_coords) {
  require(z_coords.size() == S.dim_z(), Err::Dim,
          "coordinates must match the centre dimension");
  return j_operator(S, S.from_z(z_coords));
}

double check_pseudo_h(const Splitting& S) {
  const int dz = S.dim_z();
  const int m = S.dim_v();
  const Mat id = Mat::Identity(m, m);
  double residual = 0.0;
  auto probe = [&](const Vec& zc) {
    const Vec Z = S.from_z(zc);
    const Mat J = j_operator(S, Z).matrix;
    const double zz = S.inner(Z, Z);
    const double r = max_abs(J * J + zz * id);
    residual = std::max(residual, r);
  };
  for (int i = 0; i < dz; ++i) probe(Vec::Unit(dz, i));
  for (int i = 0; i < dz; ++i)
    for (int j = i + 1; j < dz; ++j) probe(Vec::Unit(dz, i) + Vec::Unit(dz, j));
  return residual;
}

namespace {

bool j_singular(const Splitting& S, const Vec& z_coords) {
  const Mat J = j_operator_z(S, z_coords).matrix;
  return rank_of(J, S.tol().rank) < S.dim_v();
}

std::string coords_str(const Vec& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ")";
  return os.str();
}

}  // namespace

ClassReport classify_algebra(const Splitting& S, int probes, uint64_t seed) {
  ClassReport R;
  std::ostringstream ev;
  const int m = S.dim_v();
  const int dz = S.dim_z();

  // Carnot: span([v,v]) = z, an exact rank test.
  {
    const auto& V = S.complement_basis();
    Mat span(S.dim(), std::max(1, m * (m - 1) / 2));
    span.setZero();
    int c = 0;
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b)
        span.col(c++) = S.algebra().bracket(V.col(a), V.col(b));
    R.carnot = rank_of(span, S.tol().rank) == dz;
    ev << "carnot: rank[v,v] = " << rank_of(span, S.tol().rank) << " of dim z = " << dz;
    if (R.carnot && m % 2 != 0)
      ev << " (odd complement: no j(Z) can be surjective)";
  }

  // pseudo-H / H-type from the squared relation.
  R.pseudo_h_residual = check_pseudo_h(S);
  const double scale = std::max(1.0, S.algebra().max_constant() * S.algebra().max_constant());
  R.pseudo_h_type = R.pseudo_h_residual <= S.tol().num * scale;
  R.h_type = R.pseudo_h_type && S.product().sig.positive_definite();
  ev << "; pseudo-H residual: " << R.pseudo_h_residual;

  // Metivier.
  if (m == 0 || dz == 0) {
    R.metivier = Tristate::False;
    ev << "; metivier: false (degenerate decomposition)";
  } else if (R.pseudo_h_type && S.sig_z().definite()) {
    R.metivier = Tristate::True;
    ev << "; metivier: certified by pseudo-H with definite centre metric";
  } else if (R.pseudo_h_type && !S.sig_z().definite()) {
    // An explicit null direction gives j(Z)^2 = 0, hence a singular witness.
    Eigen::SelfAdjointEigenSolver<Mat> es(S.gram_z());
    const Vec ev_z = es.eigenvalues();
    int ip = -1, in = -1;
    for (Eigen::Index i = 0; i < ev_z.size(); ++i) {
      if (ev_z(i) > 0 && ip < 0) ip = static_cast<int>(i);
      if (ev_z(i) < 0 && in < 0) in = static_cast<int>(i);
    }
    const Vec witness = es.eigenvectors().col(ip) / std::sqrt(ev_z(ip)) +
                        es.eigenvectors().col(in) / std::sqrt(-ev_z(in));
    R.metivier = Tristate::False;
    ev << "; metivier: false, null witness Z = " << coords_str(witness)
       << " in centre coordinates";
  } else if (dz == 1) {
    const bool singular = j_singular(S, Vec::Ones(1));
    R.metivier = singular ? Tristate::False : Tristate::True;
    ev << "; metivier: certified via det j(Z_1) (dim z = 1)"
       << (singular ? ", witness Z_1" : "");
  } else {
    R.metivier = Tristate::ProbablyTrue;
    for (int i = 0; i < dz && R.metivier == Tristate::ProbablyTrue; ++i) {
      if (j_singular(S, Vec::Unit(dz, i))) {
        R.metivier = Tristate::False;
        ev << "; metivier: false, witness centre basis vector " << (i + 1);
      }
    }
    for (int p = 0; p < probes && R.metivier == Tristate::ProbablyTrue; ++p) {
      // Per-probe generator: the seed fixes every probe independently of order.
      std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (p + 1)));
      std::normal_distribution<double> gauss;
      Vec zc(dz);
      do {
        for (int i = 0; i < dz; ++i) zc(i) = gauss(rng);
      } while (zc.norm() < 1e-8);
      zc /= zc.norm();
      if (j_singular(S, zc)) {
        R.metivier = Tristate::False;
        ev << "; metivier: false, witness Z = " << coords_str(zc)
           << " in centre coordinates (probe " << p << ")";
      }
    }
    if (R.metivier == Tristate::ProbablyTrue)
      ev << "; metivier: probably_true after " << probes << " seeded probes";
  }

  R.evidence = ev.str();
  return R;
}

}  // namespace nilflow
