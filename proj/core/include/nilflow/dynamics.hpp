#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilflow/algebra.hpp"
#include "nilflow/jmap.hpp"

namespace nilflow {

/// Metric blocks of a general left-invariant metric over the splitting bases:
/// g11 on v, g12: z->v, g21: v->z, g22 on z, mutually adjoint with respect to
/// gram_v / gram_z. The centre block g22 may be degenerate.
struct MetricBlocks {
  Mat g11, g12, g21, g22;

  static MetricBlocks validated(const Splitting& S, Mat g11, Mat g12, Mat g21, Mat g22);
};

/// Group element in exponential coordinates, q = exp_G(u).
struct GroupElement {
  Vec expcoord;
};

/// Product law u * w = u + w + [u,w]/2; exact for step-two groups.
GroupElement group_mul(const StepTwoAlgebra& A, const GroupElement& a, const GroupElement& b);

/// Coadjoint orbit O = Y + Im j(Y_z), an affine subspace.
struct Orbit {
  Vec base_point;
  Mat tangent_basis;  // ambient columns spanning Im j(Y_z)
  int dim = 0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  std::vector<GroupElement> group_states;  // empty unless reconstructed
  std::vector<double> hamiltonian;
  std::vector<double> energy_drift;    // H(t) - H(0)
  std::vector<double> momentum_drift;  // ||J(q,Y) - J(q0,Y0)||, NaN without group states
  std::vector<double> center_drift;    // ||Y_z(t) - Y_z(0)||
};

/// Euclidean-orthonormal basis of ker j(Z), ambient columns. Equilibria of the
/// geodesic Lie-Poisson flow with centre component Z are ker j(Z) + Z.
Mat equilibria(const Splitting& S, const Vec& Z);

Orbit coadjoint_orbit(const Splitting& S, const Vec& Y);

/// Orbit symplectic form: -<Y_z, [U_v, U'_v]>.
double orbit_symplectic(const Splitting& S, const Vec& Y, const Vec& U, const Vec& Up);

/// Reduced Hamiltonian: h(Y) = <Y,Y>/2, or the block form H^g when blocks are given.
double hamiltonian(const Splitting& S, const std::optional<MetricBlocks>& blocks, const Vec& Y);

/// Gradient of the reduced Hamiltonian (equals Y for the pure metric).
Vec hamiltonian_gradient(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                         const Vec& Y);

/// Closed-form Lie-Poisson flow. Y_z is constant by construction; Y_v evolves
/// by exp(t j(Y_z)) or, with metric blocks, by the affine flow of
/// A = j(Y_z) g11, b = j(Y_z) g12 Y_z. Times must be strictly increasing.
Trajectory flow_exact(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                      const Vec& Y0, const std::vector<double>& times);

/// Value of the closed-form flow at a single time.
Vec flow_state(const Splitting& S, const std::optional<MetricBlocks>& blocks, const Vec& Y0,
               double t);

/// Midpoint reconstruction of q(t) from the closed-form Y(t):
/// q_{k+1} = q_k * exp_G(dt * V(t_k + dt/2)), V = grad h. The group product is
/// exact, so the global error is O(dt^2) time discretization only.
Trajectory reconstruct_group(const Splitting& S, const std::optional<MetricBlocks>& blocks,
                             const Vec& Y0, const GroupElement& q0, double T, int steps);

/// Momentum map J(q, Y) = (id + (ad_{-u})^T) Y with q = exp_G(u).
Vec momentum_map(const Splitting& S, const GroupElement& q, const Vec& Y);

struct ProbeReport {
  double max_relative_deviation = 0.0;
  double growth_rate = 0.0;
  int samples = 0;
  uint64_t seed = 0;
};

/// Empirical stability probe: seeded random orbit-tangent perturbations of
/// Euclidean size eps around an equilibrium, flowed to T; reports the largest
/// relative deviation and a log-envelope growth rate fitted on [T/2, T].
ProbeReport perturbation_probe(const Splitting& S, const Vec& Ystar, double eps, double T,
                               int samples, uint64_t seed);

}  // namespace nilflow
