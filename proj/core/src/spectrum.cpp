#include "nilflow/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "nilflow/errors.hpp"

namespace nilflow {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "Stable";
    case Verdict::Unstable: return "Unstable";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

namespace {

struct Cluster {
  Complex center;
  int mult = 0;
};

// Greedy matching of one multiset against another under the map `expect`;
// every element must find a partner within `tol`.
bool match_multisets(std::vector<Cluster> a, std::vector<Cluster> b,
                     const std::function<Complex(Complex)>& expect, double tol) {
  int total_a = 0, total_b = 0;
  for (const auto& c : a) total_a += c.mult;
  for (const auto& c : b) total_b += c.mult;
  if (total_a != total_b) return false;
  for (auto& ca : a) {
    const Complex want = expect(ca.center);
    for (auto& cb : b) {
      if (cb.mult == 0) continue;
      if (std::abs(cb.center - want) <= tol) {
        const int used = std::min(ca.mult, cb.mult);
        ca.mult -= used;
        cb.mult -= used;
        if (ca.mult == 0) break;
      }
    }
    if (ca.mult != 0) return false;
  }
  return true;
}

}  // namespace

SpectrumReport classify_eigenvalues(const Mat& M, const Tolerances& tol) {
  require(M.rows() == M.cols(), Err::Dim, "classification requires a square matrix");
  const int size = static_cast<int>(M.rows());
  SpectrumReport R;
  R.n = size / 2;
  if (size == 0) return R;

  const double scale = std::max(1.0, M.norm());
  const double band = tol.spec * scale;

  Eigen::EigenSolver<Mat> es(M, /*computeEigenvectors=*/false);
  require(es.info() == Eigen::Success, Err::Pairing, "eigensolver failed to converge");
  CVec raw = es.eigenvalues();

  // Snap near-zero parts, then cluster coincident values.
  std::vector<Complex> snapped(static_cast<size_t>(size));
  for (int i = 0; i < size; ++i) {
    double re = raw(i).real(), im = raw(i).imag();
    if (std::abs(re) <= band) re = 0.0;
    if (std::abs(im) <= band) im = 0.0;
    snapped[static_cast<size_t>(i)] = Complex(re, im);
  }
  std::vector<Cluster> clusters;
  std::vector<bool> used(static_cast<size_t>(size), false);
  for (int i = 0; i < size; ++i) {
    if (used[static_cast<size_t>(i)]) continue;
    Cluster c{snapped[static_cast<size_t>(i)], 1};
    used[static_cast<size_t>(i)] = true;
    for (int j = i + 1; j < size; ++j) {
      if (used[static_cast<size_t>(j)]) continue;
      if (std::abs(snapped[static_cast<size_t>(j)] - c.center) <= 2.0 * band) {
        c.center = (c.center * static_cast<double>(c.mult) + snapped[static_cast<size_t>(j)]) /
                   static_cast<double>(c.mult + 1);
        ++c.mult;
        used[static_cast<size_t>(j)] = true;
      }
    }
    double re = c.center.real(), im = c.center.imag();
    if (std::abs(re) <= band) re = 0.0;
    if (std::abs(im) <= band) im = 0.0;
    c.center = Complex(re, im);
    clusters.push_back(c);
  }

  // Partition into the four kinds.
  std::vector<Cluster> zero, imag_pos, imag_neg, real_pos, real_neg, cpp, cpm, cmp, cmm;
  for (const auto& c : clusters) {
    const double re = c.center.real(), im = c.center.imag();
    if (re == 0.0 && im == 0.0) zero.push_back(c);
    else if (re == 0.0) (im > 0 ? imag_pos : imag_neg).push_back(c);
    else if (im == 0.0) (re > 0 ? real_pos : real_neg).push_back(c);
    else if (re > 0) (im > 0 ? cpp : cpm).push_back(c);
    else (im > 0 ? cmp : cmm).push_back(c);
  }

  const double pair_tol = 4.0 * band;
  auto neg = [](Complex z) { return -z; };
  auto conj = [](Complex z) { return std::conj(z); };
  auto negconj = [](Complex z) { return -std::conj(z); };
  require(match_multisets(imag_pos, imag_neg, conj, pair_tol), Err::Pairing,
          "imaginary eigenvalues do not close under conjugation");
  require(match_multisets(real_pos, real_neg, neg, pair_tol), Err::Pairing,
          "real eigenvalues do not close under negation");
  require(match_multisets(cpp, cpm, conj, pair_tol) &&
              match_multisets(cpp, cmm, neg, pair_tol) &&
              match_multisets(cpp, cmp, negconj, pair_tol),
          Err::Pairing, "complex eigenvalues do not close into quadruples");

  int zeros = 0;
  for (const auto& c : zero) zeros += c.mult;
  for (const auto& c : imag_pos) R.k_e += c.mult;
  for (const auto& c : real_pos) R.k_h += c.mult;
  for (const auto& c : cpp) R.k_f += c.mult;

  if (size % 2 == 1) {
    require(zeros >= 1 && (zeros - 1) % 2 == 0, Err::Pairing,
            "odd-size matrix must carry an odd number of zero eigenvalues");
    R.unpaired_zero = 1;
    R.k_0 = (zeros - 1) / 2;
  } else {
    require(zeros % 2 == 0, Err::Pairing,
            "even-size matrix must carry an even number of zero eigenvalues");
    R.k_0 = zeros / 2;
  }

  if (R.k_e + R.k_h + 2 * R.k_f + R.k_0 != R.n) {
    std::ostringstream msg;
    msg << "count identity violated: " << R.k_e << "+" << R.k_h << "+2*" << R.k_f << "+"
        << R.k_0 << " != " << R.n;
    fail(Err::Pairing, msg.str());
  }

  // Semisimplicity per cluster, rank defect over the complexification.
  const CMat Mc = M.cast<Complex>();
  for (const auto& c : clusters) {
    const CMat shifted = Mc - c.center * CMat::Identity(size, size);
    Eigen::JacobiSVD<CMat> svd(shifted);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
      if (s(i) > band) ++rank;
    if (rank != size - c.mult) R.semisimple = false;
  }

  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.center.real() != b.center.real()) return a.center.real() > b.center.real();
    return a.center.imag() > b.center.imag();
  });
  for (const auto& c : clusters) R.eigenvalues.emplace_back(c.center, c.mult);
  return R;
}

Verdict stability_verdict(const SpectrumReport& R) {
  if (R.k_h > 0 || R.k_f > 0) return Verdict::Unstable;
  if (R.semisimple) return Verdict::Stable;
  return Verdict::Indeterminate;
}

std::pair<SpectrumReport, SpectrumReport> williamson_on_orbit(const JOperator& J,
                                                              const Tolerances& tol) {
  SpectrumReport full = classify_eigenvalues(J.matrix, tol);
  full.verdict = stability_verdict(full);

  const Mat Q = image_basis(J.matrix, tol.rank);
  const Mat restricted = Q.transpose() * J.matrix * Q;
  SpectrumReport orbit = classify_eigenvalues(restricted, tol);
  orbit.verdict = stability_verdict(orbit);
  return {std::move(full), std::move(orbit)};
}

}  // namespace nilflow
