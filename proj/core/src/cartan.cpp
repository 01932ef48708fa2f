#include "nilflow/cartan.hpp"

#include <cmath>
#include <random>

#include "nilflow/errors.hpp"
#include "nilflow/linalg.hpp"

namespace nilflow {

const char* cartan_family_name(CartanFamily f) {
  switch (f) {
    case CartanFamily::D: return "D";
    case CartanFamily::Dprime: return "Dprime";
    case CartanFamily::B: return "B";
  }
  return "?";
}

namespace {

void validate(const CartanParams& P) {
  require(P.p >= 0 && P.q >= 0 && P.p <= P.q && P.p + P.q >= 2, Err::Params,
          "need 0 <= p <= q and p + q >= 2");
  require(P.ell >= 0 && P.k >= 0, Err::Params, "l and k must be nonnegative");
  switch (P.family) {
    case CartanFamily::D:
      require((P.p + P.q) % 2 == 0, Err::FamilyMismatch, "family D needs p + q even");
      require(2 * (P.k + P.ell) <= P.p, Err::Params, "family D needs 2(k+l) <= p");
      break;
    case CartanFamily::B:
      require((P.p + P.q) % 2 == 1, Err::FamilyMismatch, "family B needs p + q odd");
      require(2 * (P.k + P.ell) + 1 <= P.p, Err::Params, "family B needs 2(k+l)+1 <= p");
      break;
    case CartanFamily::Dprime:
      require((P.p + P.q) % 2 == 0, Err::FamilyMismatch, "family Dprime needs p + q even");
      require(P.p == P.q, Err::Params, "family Dprime needs p = q");
      require(P.n() % 2 == 0, Err::Params, "family Dprime needs n even");
      require(P.ell == 0 && P.k == (P.n() - 2) / 2, Err::Params,
              "family Dprime needs l = 0 and k = (n-2)/2");
      break;
  }
  require(static_cast<int>(P.h.size()) == P.n(), Err::Params,
          "h must supply n = floor((p+q)/2) parameters");
}

// Replace negated zeros so assembled matrices print and compare cleanly.
Mat scrub_zeros(Mat M) {
  return M.unaryExpr([](double x) { return x == 0.0 ? 0.0 : x; });
}

// [[0, -diag(v)], [diag(v), 0]], one rotation plane per entry of v.
Mat rot_block(const Vec& v) {
  const Eigen::Index r = v.size();
  Mat B = Mat::Zero(2 * r, 2 * r);
  for (Eigen::Index i = 0; i < r; ++i) {
    B(i, r + i) = -v(i);
    B(r + i, i) = v(i);
  }
  return B;
}

Vec h_seg(const CartanParams& P, int from, int count) {
  Vec v(count);
  for (int i = 0; i < count; ++i) v(i) = P.h[static_cast<size_t>(from + i)];
  return v;
}

}  // namespace

CanonicalMatrix cartan_matrix(const CartanParams& P) {
  validate(P);
  const int n = P.n();
  const int p = P.p, ell = P.ell, k = P.k;

  CanonicalMatrix result;
  result.params = P;

  if (P.family == CartanFamily::Dprime) {
    // Coordinate groups: u_a (n-2), u_b (2), v_a (n-2), v_b (2);
    // eta = diag(E_n, -E_n). The b-part couples through D5' with D7 on the
    // diagonal, so that a generic element is one focus-focus quadruple
    // +-h_{n-1} +- h_n i on top of the (n-2)/2 quadruples of the a-part.
    const int a = n - 2;
    Mat M = Mat::Zero(2 * n, 2 * n);
    Mat D3 = Mat::Zero(a, a);
    for (int i = 0; i < k; ++i) {
      D3(i, i) = P.h[static_cast<size_t>(i)];
      D3(k + i, k + i) = P.h[static_cast<size_t>(i)];
    }
    const Mat D4 = rot_block(h_seg(P, n / 2 - 1, k));
    Mat D5p = Mat::Zero(2, 2);
    D5p(0, 0) = P.h[static_cast<size_t>(n - 2)];
    D5p(1, 1) = -P.h[static_cast<size_t>(n - 2)];
    Mat D7 = Mat::Zero(2, 2);
    D7(0, 1) = -P.h[static_cast<size_t>(n - 1)];
    D7(1, 0) = P.h[static_cast<size_t>(n - 1)];

    const int ua = 0, ub = a, va = a + 2, vb = 2 * a + 2;
    M.block(ua, ua, a, a) = D4;
    M.block(va, va, a, a) = D4;
    M.block(ua, va, a, a) = -D3;
    M.block(va, ua, a, a) = -D3;
    M.block(ub, ub, 2, 2) = D7;
    M.block(vb, vb, 2, 2) = -D7;
    M.block(ub, vb, 2, 2) = D5p;
    M.block(vb, ub, 2, 2) = D5p;
    result.matrix = scrub_zeros(std::move(M));
    return result;
  }

  // Families D and B share the layout
  //   [ 2l | 2k | p-2l-2k | 2l | 2k | p-2l-2k | 2(n-p) | (1) ]
  // with eta = diag(E_p, -E_q).
  const int g3 = p - 2 * ell - 2 * k;
  const int size = (P.family == CartanFamily::D) ? 2 * n : 2 * n + 1;
  Mat M = Mat::Zero(size, size);

  const int o1 = 0, o2 = 2 * ell, o3 = 2 * ell + 2 * k;
  const int o4 = p, o5 = p + 2 * ell, o6 = p + 2 * ell + 2 * k;
  const int o7 = 2 * p, o8 = 2 * p + 2 * (n - p);

  const Vec h1 = h_seg(P, 0, ell);
  const Vec h2 = h_seg(P, ell, ell);
  M.block(o1, o1, 2 * ell, 2 * ell) = rot_block(h1 + h2);
  M.block(o4, o4, 2 * ell, 2 * ell) = rot_block(h1 - h2);

  Mat D3 = Mat::Zero(2 * k, 2 * k);
  for (int i = 0; i < k; ++i) {
    D3(i, i) = P.h[static_cast<size_t>(2 * ell + i)];
    D3(k + i, k + i) = P.h[static_cast<size_t>(2 * ell + i)];
  }
  const Mat D4 = rot_block(h_seg(P, 2 * ell + k, k));
  M.block(o2, o2, 2 * k, 2 * k) = D4;
  M.block(o5, o5, 2 * k, 2 * k) = D4;
  M.block(o2, o5, 2 * k, 2 * k) = -D3;
  M.block(o5, o2, 2 * k, 2 * k) = -D3;

  M.block(o7, o7, 2 * (n - p), 2 * (n - p)) = rot_block(h_seg(P, p, n - p));

  if (P.family == CartanFamily::D) {
    Mat D5 = Mat::Zero(g3, g3);
    for (int i = 0; i < g3; ++i) D5(i, i) = P.h[static_cast<size_t>(2 * ell + 2 * k + i)];
    M.block(o3, o6, g3, g3) = -D5;
    M.block(o6, o3, g3, g3) = -D5;
  } else {
    Mat D5pp = Mat::Zero(g3, g3);  // diag(0, h_{2l+2k+2}, ..., h_p)
    for (int i = 1; i < g3; ++i) D5pp(i, i) = P.h[static_cast<size_t>(2 * ell + 2 * k + i)];
    M.block(o3, o6, g3, g3) = -D5pp;
    M.block(o6, o3, g3, g3) = -D5pp;
    const double d8 = P.h[static_cast<size_t>(2 * ell + 2 * k)] / std::sqrt(2.0);
    M(o6, o8) = d8;
    M(o8, o6) = -d8;
  }

  result.matrix = scrub_zeros(std::move(M));
  return result;
}

PredictedType predicted_williamson(const CartanParams& P) {
  const CanonicalMatrix C = cartan_matrix(P);  // validates P
  const int n = P.n();
  PredictedType T;
  switch (P.family) {
    case CartanFamily::D:
      T.k_e = 2 * P.ell - P.p + n;
      T.k_h = P.p - 2 * P.ell - 2 * P.k;
      T.k_f = P.k;
      break;
    case CartanFamily::Dprime:
      T.k_e = 0;
      T.k_h = 0;
      T.k_f = n / 2;
      break;
    case CartanFamily::B:
      T.k_e = 2 * P.ell + 1 + n - P.p;
      T.k_h = P.p - 2 * P.ell - 2 * P.k - 1;
      T.k_f = P.k;
      break;
  }
  T.rank_deficient = rank_of(C.matrix, 1e-10) < 2 * n;
  return T;
}

CrossCheckReport cross_check(CartanParams P, int trials, uint64_t seed,
                             const Tolerances& tol) {
  require(trials >= 1, Err::Params, "trials must be >= 1");
  const int n = P.n();
  CrossCheckReport R;
  R.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (t + 1)));
    std::uniform_real_distribution<double> uni(0.5, 2.0);
    P.h.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
      bool fresh = false;
      while (!fresh) {
        const double cand = uni(rng);
        fresh = true;
        for (int j = 0; j < i; ++j)
          if (std::abs(std::abs(P.h[static_cast<size_t>(j)]) - cand) < 1e-3) fresh = false;
        if (fresh) P.h[static_cast<size_t>(i)] = cand;
      }
    }
    const PredictedType want = predicted_williamson(P);
    if (want.rank_deficient) {
      ++R.skipped;
      continue;
    }
    const SpectrumReport got = classify_eigenvalues(cartan_matrix(P).matrix, tol);
    if (got.k_e == want.k_e && got.k_h == want.k_h && got.k_f == want.k_f && got.k_0 == 0) {
      ++R.matches;
    } else {
      R.mismatched_h.push_back(P.h);
    }
  }
  return R;
}

}  // namespace nilflow
