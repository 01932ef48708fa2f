#include "nilflow/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "nilflow/expm.hpp"

namespace nilflow {

MetricBlocks MetricBlocks::validated(const Splitting& S, Mat g11, Mat g12, Mat g21, Mat g22) {
  const int m = S.dim_v();
  const int dz = S.dim_z();
  require(g11.rows() == m && g11.cols() == m && g12.rows() == m && g12.cols() == dz &&
              g21.rows() == dz && g21.cols() == m && g22.rows() == dz && g22.cols() == dz,
          Err::Dim, "metric block shapes do not match the splitting");
  const auto& Gv = S.gram_v();
  const auto& Gz = S.gram_z();
  const double scale =
      std::max({1.0, max_abs(g11), max_abs(g12), max_abs(g21), max_abs(g22)});
  const double band = S.tol().num * scale * std::max(1.0, max_abs(Gv));
  require(max_abs((Gv * g11) - (Gv * g11).transpose()) <= band, Err::Schema,
          "g11 is not self-adjoint with respect to gram_v");
  require(max_abs((Gz * g22) - (Gz * g22).transpose()) <= band, Err::Schema,
          "g22 is not self-adjoint with respect to gram_z");
  require(max_abs(g12.transpose() * Gv - Gz * g21) <= band, Err::Schema,
          "g12 and g21 are not mutually adjoint");
  return MetricBlocks{std::move(g11), std::move(g12), std::move(g21), std::move(g22)};
}

GroupElement group_mul(const StepTwoAlgebra& A, const GroupElement& a, const GroupElement& b) {
  return GroupElement{a.expcoord + b.expcoord + 0.5 * A.bracket(a.expcoord, b.expcoord)};
}

Mat equilibria(const Splitting& S, const Vec& Z) {
  const Mat J = j_operator(S, Z).matrix;
  const Mat K = kernel_basis(J, S.tol().rank);
  return S.complement_basis() * K;
}

Orbit coadjoint_orbit(const Splitting& S, const Vec& Y) {
  require(Y.size() == S.dim(), Err::Dim, "vector length must equal the algebra dimension");
  const Mat J = j_operator(S, S.z_part(Y)).matrix;
  Orbit O;
  O.base_point = Y;
  const Mat Q = image_basis(J, S.tol().rank);
  O.tangent_basis = S.complement_basis() * Q;
  O.dim = static_cast<int>(Q.cols());
  return O;
}

double orbit_symplectic(const Splitting& S, const Vec& Y, const Vec& U, const Vec& Up) {
  const Vec w = S.algebra().bracket(S.v_part(U), S.v_part(Up));
  return -S.inner(S.z_part(Y), w);
}

double hamiltonian(const Splitting& S, const std::optional<MetricBlocks>& blocks, const Vec& Y) {
  require(Y.size() == S.dim(), Err::Dim, "vector length must equal the algebra dimension");
  if (!blocks) return 0.5 * S.inner(Y, Y);
  const Vec yv = S.v_coords(Y);
  const Vec yz = S.z_coords(Y);
  const double hv = yv.dot(S.gram_v() * (blocks->g11 * yv + blocks->g12 * yz));
  const double hz = yz.dot(S.gram_z() * (blocks->g21 * yv + blocks->g22 * yz));
  return 0.5 * (hv + hz);
}

Vec hamiltonian_gradient(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                         const Vec& Y) {
  if (!blocks) return Y;
  const Vec yv = S.v_coords(Y);
  const Vec yz = S.z_coords(Y);
  return S.from_v(blocks->g11 * yv + blocks->g12 * yz) +
         S.from_z(blocks->g21 * yv + blocks->g22 * yz);
}

namespace {

struct FlowOperator {
  Mat A;         // on v-coordinates
  Vec b;         // constant drive, zero for the pure metric
  Vec yv0, yz;   // initial v-coordinates and frozen z-coordinates
  Vec z_amb;     // ambient z-part, reused verbatim at every sample

  Vec state_at(const Splitting& S, double t) const {
    Vec yv(yv0.size());
    if (b.size() == 0 || max_abs(b) == 0.0) {
      yv = expm(t * A) * yv0;
    } else {
      yv = affine_flow(A, b, yv0, t);
    }
    return S.from_v(yv) + z_amb;
  }
};

FlowOperator make_flow(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                       const Vec& Y0) {
  FlowOperator F;
  F.yz = S.z_coords(Y0);
  F.yv0 = S.v_coords(Y0);
  F.z_amb = S.from_z(F.yz);
  const Mat J = j_operator(S, F.z_amb).matrix;
  if (blocks) {
    F.A = J * blocks->g11;
    F.b = J * (blocks->g12 * F.yz);
  } else {
    F.A = J;
    F.b = Vec::Zero(0);
  }
  return F;
}

}  // namespace

Vec flow_state(const Splitting& S, const std::optional<MetricBlocks>& blocks, const Vec& Y0,
               double t) {
  return make_flow(S, blocks, Y0).state_at(S, t);
}

Trajectory flow_exact(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                      const Vec& Y0, const std::vector<double>& times) {
  require(Y0.size() == S.dim(), Err::Dim, "Y0 must have the algebra dimension");
  for (size_t i = 1; i < times.size(); ++i)
    require(times[i] > times[i - 1], Err::Times, "times must be strictly increasing");

  const FlowOperator F = make_flow(S, blocks, Y0);
  const double H0 = hamiltonian(S, blocks, Y0);

  Trajectory tr;
  tr.times = times;
  tr.states.reserve(times.size());
  for (const double t : times) {
    const Vec Y = F.state_at(S, t);
    const double H = hamiltonian(S, blocks, Y);
    tr.states.push_back(Y);
    tr.hamiltonian.push_back(H);
    tr.energy_drift.push_back(H - H0);
    tr.momentum_drift.push_back(std::numeric_limits<double>::quiet_NaN());
    // Y_z is a Casimir; the states reuse the same ambient z-part verbatim.
    tr.center_drift.push_back(0.0);
  }
  return tr;
}

Trajectory reconstruct_group(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                             const Vec& Y0, const GroupElement& q0, double T, int steps) {
  require(steps >= 1, Err::Steps, "steps must be >= 1");
  require(q0.expcoord.size() == S.dim(), Err::Dim, "q0 must have the algebra dimension");

  const FlowOperator F = make_flow(S, blocks, Y0);
  const double dt = T / steps;
  const double H0 = hamiltonian(S, blocks, Y0);
  const Vec J0 = momentum_map(S, q0, Y0);

  Trajectory tr;
  GroupElement q = q0;
  for (int k = 0; k <= steps; ++k) {
    const double t = k * dt;
    const Vec Y = F.state_at(S, t);
    tr.times.push_back(t);
    tr.states.push_back(Y);
    tr.group_states.push_back(q);
    const double H = hamiltonian(S, blocks, Y);
    tr.hamiltonian.push_back(H);
    tr.energy_drift.push_back(H - H0);
    tr.momentum_drift.push_back((momentum_map(S, q, Y) - J0).norm());
    tr.center_drift.push_back(0.0);
    if (k < steps) {
      const Vec Ymid = F.state_at(S, t + 0.5 * dt);
      const Vec V = hamiltonian_gradient(S, blocks, Ymid);
      q = group_mul(S.algebra(), q, GroupElement{dt * V});
    }
  }
  if (T < 0) {  // keep trajectory times strictly increasing
    std::reverse(tr.times.begin(), tr.times.end());
    std::reverse(tr.states.begin(), tr.states.end());
    std::reverse(tr.group_states.begin(), tr.group_states.end());
    std::reverse(tr.hamiltonian.begin(), tr.hamiltonian.end());
    std::reverse(tr.energy_drift.begin(), tr.energy_drift.end());
    std::reverse(tr.momentum_drift.begin(), tr.momentum_drift.end());
    std::reverse(tr.center_drift.begin(), tr.center_drift.end());
  }
  return tr;
}

Vec momentum_map(const Splitting& S, const GroupElement& q, const Vec& Y) {
  require(Y.size() == S.dim() && q.expcoord.size() == S.dim(), Err::Dim,
          "momentum map arguments must have the algebra dimension");
  // (Ad_{exp u})^T = id + (ad_u)^T and (ad_u)^T Y = j(Y_z) u_v.
  const Mat J = j_operator(S, S.z_part(Y)).matrix;
  const Vec uv = S.v_coords(q.expcoord);
  return Y - S.from_v(J * uv);
}

ProbeReport perturbation_probe(const Splitting& S, const Vec& Ystar, double eps, double T,
                               int samples, uint64_t seed) {
  require(eps > 0.0, Err::Params, "eps must be positive");
  require(samples >= 1, Err::Params, "samples must be >= 1");
  const Vec yz = S.z_part(Ystar);
  const Mat J = j_operator(S, yz).matrix;
  const Vec rate0 = J * S.v_coords(Ystar);
  require(rate0.norm() <= S.tol().num * std::max(1.0, Ystar.norm()), Err::NotEquilibrium,
          "flow does not vanish at the probe base point");

  const Mat tangent = image_basis(J, S.tol().rank);  // v-coordinates
  const int r = static_cast<int>(tangent.cols());
  ProbeReport R;
  R.samples = samples;
  R.seed = seed;
  if (r == 0) return R;  // zero-dimensional orbit: nothing moves

  constexpr int kTimeSamples = 256;
  std::vector<double> env(kTimeSamples + 1, 0.0);
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (s + 1)));
    std::normal_distribution<double> gauss;
    Vec dir(r);
    do {
      for (int i = 0; i < r; ++i) dir(i) = gauss(rng);
    } while (dir.norm() < 1e-8);
    const Vec delta = S.from_v(tangent * (eps * dir / dir.norm()));
    const Vec Y0 = Ystar + delta;
    const FlowOperator F = make_flow(S, std::nullopt, Y0);
    for (int k = 0; k <= kTimeSamples; ++k) {
      const double t = T * k / kTimeSamples;
      const double dev = (F.state_at(S, t) - Ystar).norm();
      env[static_cast<size_t>(k)] = std::max(env[static_cast<size_t>(k)], dev);
      R.max_relative_deviation = std::max(R.max_relative_deviation, dev / eps);
    }
  }

  // Least-squares slope of log(envelope) on the second half of the window,
  // past the cosh-type transient.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int npts = 0;
  for (int k = kTimeSamples / 2; k <= kTimeSamples; ++k) {
    if (env[static_cast<size_t>(k)] <= 0.0) continue;
    const double x = T * k / kTimeSamples;
    const double y = std::log(env[static_cast<size_t>(k)]);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++npts;
  }
  if (npts >= 2) {
    const double denom = npts * sxx - sx * sx;
    if (denom != 0.0) R.growth_rate = (npts * sxy - sx * sy) / denom;
  }
  return R;
}

}  // namespace nilflow
