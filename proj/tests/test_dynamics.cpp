#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nilflow/constructors.hpp"
#include "nilflow/dynamics.hpp"
#include "oracles.hpp"

using namespace nilflow;

namespace {

Splitting split_builtin(const std::string& name) {
  auto [A, P] = builtin(name);
  return Splitting::make(std::move(A), std::move(P));
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> t(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<size_t>(i)] = a + (b - a) * i / (n - 1);
  return t;
}

Vec seeded_state(const Splitting& S, uint64_t seed, uint64_t index) {
  auto rng = oracles::rng_for(seed, index);
  return oracles::gaussian_vector(rng, S.dim());
}

}  // namespace

TEST_CASE("equilibria kernels") {
  auto S3 = split_builtin("heisenberg3");
  CHECK(equilibria(S3, Vec::Unit(3, 2)).cols() == 0);  // invertible rotation generator
  CHECK(equilibria(S3, Vec::Zero(3)).cols() == 2);     // j(0) = 0: all of v

  auto Shh = split_builtin("h3_plus_h3");
  const Mat K = equilibria(Shh, Vec::Unit(6, 2));  // Z = Z1
  REQUIRE(K.cols() == 2);
  // kernel = span{X2, Y2} = axes 3 and 4
  for (int c = 0; c < 2; ++c) {
    CHECK(std::abs(K(0, c)) <= 1e-12);
    CHECK(std::abs(K(1, c)) <= 1e-12);
    CHECK(std::abs(K(2, c)) <= 1e-12);
    CHECK(std::abs(K(5, c)) <= 1e-12);
  }
}

TEST_CASE("coadjoint orbits are affine with tangent Im j(Y_z)") {
  auto S3 = split_builtin("heisenberg3");
  Vec Y(3);
  Y << 0.3, -0.7, 2.0;
  CHECK(coadjoint_orbit(S3, Y).dim == 2);
  Vec Yz0(3);
  Yz0 << 1.0, 2.0, 0.0;
  CHECK(coadjoint_orbit(S3, Yz0).dim == 0);

  auto Shh = split_builtin("h3_plus_h3");
  Vec Yh = Vec::Unit(6, 2);
  const auto O = coadjoint_orbit(Shh, Yh);
  CHECK(O.dim == 2);
  for (Eigen::Index c = 0; c < O.tangent_basis.cols(); ++c) {
    CHECK(std::abs(O.tangent_basis(2, c)) <= 1e-12);
    CHECK(std::abs(O.tangent_basis(3, c)) <= 1e-12);
    CHECK(std::abs(O.tangent_basis(4, c)) <= 1e-12);
    CHECK(std::abs(O.tangent_basis(5, c)) <= 1e-12);
  }
}

TEST_CASE("orbit symplectic form") {
  auto S = split_builtin("heisenberg3");
  const Vec X = Vec::Unit(3, 0), Y = Vec::Unit(3, 1), Z = Vec::Unit(3, 2);
  CHECK(orbit_symplectic(S, Z, X, Y) == -1.0);
  CHECK(orbit_symplectic(S, Z, X, X) == 0.0);
  CHECK(orbit_symplectic(S, Z, Z, Y) == 0.0);  // central U has U_v = 0
  // antisymmetry on random arguments
  for (uint64_t i = 0; i < 8; ++i) {
    auto rng = oracles::rng_for(41, i);
    const Vec U = oracles::gaussian_vector(rng, 3);
    const Vec Up = oracles::gaussian_vector(rng, 3);
    const Vec Yy = oracles::gaussian_vector(rng, 3);
    CHECK(std::abs(orbit_symplectic(S, Yy, U, Up) + orbit_symplectic(S, Yy, Up, U)) <= 1e-12);
  }
}

TEST_CASE("hamiltonian values") {
  auto S = split_builtin("heisenberg3");
  Vec Y(3);
  Y << 1, 0, 1;
  CHECK(hamiltonian(S, std::nullopt, Y) == 1.0);
  CHECK(hamiltonian(S, std::nullopt, Vec::Zero(3)) == 0.0);

  auto [A, _] = builtin("heisenberg3");
  Mat G = Mat::Identity(3, 3);
  G(2, 2) = -1.0;
  auto S2 = Splitting::make(A, ScalarProduct::from_gram(G));
  CHECK(hamiltonian(S2, std::nullopt, Vec::Unit(3, 2)) == -0.5);
}

TEST_CASE("flow_exact: rotation on h3") {
  auto S = split_builtin("heisenberg3");
  Vec Y0(3);
  Y0 << 1, 0, 1;
  auto tr = flow_exact(S, std::nullopt, Y0, {0.0, M_PI_2});
  CHECK((tr.states[0] - Y0).norm() == 0.0);  // t = 0 returns Y0 verbatim
  Vec want(3);
  want << 0, 1, 1;
  CHECK((tr.states[1] - want).norm() <= 1e-12);
  CHECK(std::abs(tr.energy_drift[1]) <= 1e-12);
  CHECK(tr.center_drift[1] == 0.0);

  // independent RK4 oracle at dt = 1e-4
  const Vec rk = oracles::rk4_flow(S, std::nullopt, Y0, M_PI_2, 1e-4);
  CHECK((tr.states[1] - rk).norm() <= 1e-8);

  CHECK_THROWS_WITH_AS(flow_exact(S, std::nullopt, Y0, {1.0, 0.0}),
                       doctest::Contains("E_TIMES"), Error);
}

TEST_CASE("flow_exact: hyperbolic growth on pseudoH_1_1") {
  auto S = split_builtin("pseudoH_1_1");
  Vec Y0(3);
  Y0 << 1, 0, 1;
  const auto times = linspace(0.0, 3.0, 7);
  auto tr = flow_exact(S, std::nullopt, Y0, times);
  for (size_t k = 0; k < times.size(); ++k) {
    const double t = times[k];
    const double want = std::sqrt(std::cosh(t) * std::cosh(t) + std::sinh(t) * std::sinh(t));
    const double got = tr.states[k].head(2).norm();
    CHECK(std::abs(got - want) <= 1e-10 * want);
  }
}

TEST_CASE("flow_exact with metric blocks matches RK4 and conserves H^g") {
  auto S = split_builtin("metivier5");
  // g11 = diag(2, 2, 1, 1) (self-adjoint for the Euclidean gram), g12 = g21 = 0,
  // g22 = 3: a genuinely non-round metric.
  Mat g11 = Mat::Identity(4, 4);
  g11(0, 0) = g11(1, 1) = 2.0;
  const auto blocks = MetricBlocks::validated(S, g11, Mat::Zero(4, 1), Mat::Zero(1, 4),
                                              3.0 * Mat::Identity(1, 1));
  Vec Y0(5);
  Y0 << 0.3, -0.2, 0.5, 0.1, 0.7;
  const auto times = linspace(0.0, 2.0, 5);
  auto tr = flow_exact(S, blocks, Y0, times);
  for (size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(tr.energy_drift[k]) <= 1e-11);
    const Vec rk = oracles::rk4_flow(S, blocks, Y0, times[k], 1e-4);
    CHECK((tr.states[k] - rk).norm() <= 1e-8);
  }

  // nonzero g12 drives the affine part; adjointness pins g21 = g12^T here
  Mat g12 = Mat::Zero(4, 1);
  g12(0, 0) = 0.5;
  const auto blocks2 =
      MetricBlocks::validated(S, g11, g12, g12.transpose(), 3.0 * Mat::Identity(1, 1));
  auto tr2 = flow_exact(S, blocks2, Y0, times);
  for (size_t k = 0; k < times.size(); ++k) {
    CHECK(std::abs(tr2.energy_drift[k]) <= 1e-11);
    const Vec rk = oracles::rk4_flow(S, blocks2, Y0, times[k], 1e-4);
    CHECK((tr2.states[k] - rk).norm() <= 1e-8);
  }

  // a center-degenerate g22 block is accepted (only g11, g12 drive the flow)
  const auto blocks3 =
      MetricBlocks::validated(S, g11, g12, g12.transpose(), Mat::Zero(1, 1));
  CHECK_NOTHROW(flow_exact(S, blocks3, Y0, times));

  // non-adjoint blocks are rejected
  Mat bad = g11;
  bad(0, 1) = 5.0;
  CHECK_THROWS_WITH_AS(
      MetricBlocks::validated(S, bad, g12, g12.transpose(), Mat::Identity(1, 1)),
      doctest::Contains("E_SCHEMA"), Error);
}

TEST_CASE("group product: associativity and exp coordinates") {
  auto [A, P] = builtin("h3_plus_h3");
  for (uint64_t i = 0; i < 12; ++i) {
    auto rng = oracles::rng_for(43, i);
    const GroupElement a{oracles::gaussian_vector(rng, 6)};
    const GroupElement b{oracles::gaussian_vector(rng, 6)};
    const GroupElement c{oracles::gaussian_vector(rng, 6)};
    const auto ab_c = group_mul(A, group_mul(A, a, b), c);
    const auto a_bc = group_mul(A, a, group_mul(A, b, c));
    CHECK((ab_c.expcoord - a_bc.expcoord).norm() <= 1e-12);
  }
}

TEST_CASE("reconstruct_group: constant and straight-line cases") {
  auto S = split_builtin("heisenberg3");
  // V = 0: q stays put
  auto tr0 = reconstruct_group(S, std::nullopt, Vec::Zero(3),
                               GroupElement{Vec::Unit(3, 0)}, 5.0, 32);
  for (const auto& q : tr0.group_states)
    CHECK((q.expcoord - Vec::Unit(3, 0)).norm() == 0.0);

  // Y0 = X: Y is constant and q(T) = exp(T X) exactly
  Vec Y0(3);
  Y0 << 1, 0, 0;
  auto tr = reconstruct_group(S, std::nullopt, Y0, GroupElement{Vec::Zero(3)}, 2.0, 64);
  CHECK((tr.group_states.back().expcoord - 2.0 * Y0).norm() <= 1e-12);

  CHECK_THROWS_WITH_AS(
      reconstruct_group(S, std::nullopt, Y0, GroupElement{Vec::Zero(3)}, 1.0, 0),
      doctest::Contains("E_STEPS"), Error);
}

TEST_CASE("reconstruct_group: Richardson halving shows second order") {
  auto S = split_builtin("heisenberg3");
  Vec Y0(3);
  Y0 << 1, 0, 1;
  const double T = 10.0;
  // reference solution with many steps
  const Vec fine =
      reconstruct_group(S, std::nullopt, Y0, GroupElement{Vec::Zero(3)}, T, 1 << 14)
          .group_states.back().expcoord;
  const Vec c8 = reconstruct_group(S, std::nullopt, Y0, GroupElement{Vec::Zero(3)}, T, 1 << 8)
                     .group_states.back().expcoord;
  const Vec c9 = reconstruct_group(S, std::nullopt, Y0, GroupElement{Vec::Zero(3)}, T, 1 << 9)
                     .group_states.back().expcoord;
  const double e8 = (c8 - fine).norm();
  const double e9 = (c9 - fine).norm();
  const double ratio = e8 / e9;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("reconstruct_group with metric blocks conserves the momentum map") {
  auto S = split_builtin("metivier5");
  Mat g11 = Mat::Identity(4, 4);
  g11(0, 0) = g11(1, 1) = 2.0;
  Mat g12 = Mat::Zero(4, 1);
  g12(0, 0) = 0.5;
  const auto blocks =
      MetricBlocks::validated(S, g11, g12, g12.transpose(), 3.0 * Mat::Identity(1, 1));
  Vec Y0(5);
  Y0 << 0.3, -0.2, 0.5, 0.1, 0.7;
  auto tr = reconstruct_group(S, blocks, Y0, GroupElement{Vec::Zero(5)}, 5.0, 1 << 12);
  double drift = 0.0;
  for (double d : tr.momentum_drift) drift = std::max(drift, d);
  CHECK(drift <= 1e-4);
  // and H^g stays flat along the sampled states
  for (double dh : tr.energy_drift) CHECK(std::abs(dh) <= 1e-10);
}

TEST_CASE("momentum map: closed form and conservation") {
  auto S = split_builtin("heisenberg3");
  Vec Y(3);
  Y << 0.2, 0.4, -1.0;
  CHECK((momentum_map(S, GroupElement{Vec::Zero(3)}, Y) - Y).norm() == 0.0);

  // q = exp(X), Y = Z: J = Z - j(Z)X = Z - Y_basis
  const Vec J = momentum_map(S, GroupElement{Vec::Unit(3, 0)}, Vec::Unit(3, 2));
  Vec want(3);
  want << 0, -1, 1;
  CHECK((J - want).norm() <= 1e-12);

  Vec Y0(3);
  Y0 << 1, 0, 1;
  auto tr = reconstruct_group(S, std::nullopt, Y0, GroupElement{Vec::Zero(3)}, 10.0, 1 << 12);
  double max_drift = 0.0;
  for (double d : tr.momentum_drift) max_drift = std::max(max_drift, d);
  CHECK(max_drift <= 1e-6);
}

TEST_CASE("perturbation_probe") {
  auto S3 = split_builtin("heisenberg3");
  Vec Ystar(3);
  Ystar << 0, 0, 1;
  const auto R = perturbation_probe(S3, Ystar, 1e-3, 10.0, 8, 5);
  CHECK(R.max_relative_deviation <= 1.0 + 1e-9);  // isometric rotation
  CHECK(std::abs(R.growth_rate) <= 1e-6);

  auto Sp = split_builtin("pseudoH_1_1");
  Vec Zstar(3);
  Zstar << 0, 0, 1;  // <Z,Z> = -1: expected growth rate 1
  const auto Rp = perturbation_probe(Sp, Zstar, 1e-6, 10.0, 8, 5);
  CHECK(Rp.growth_rate == doctest::Approx(1.0).epsilon(0.05));

  // doubling eps doubles the absolute deviation on the linear flow
  const auto Ra = perturbation_probe(Sp, Zstar, 1e-6, 4.0, 4, 9);
  const auto Rb = perturbation_probe(Sp, Zstar, 2e-6, 4.0, 4, 9);
  CHECK(Ra.max_relative_deviation ==
        doctest::Approx(Rb.max_relative_deviation).epsilon(1e-9));

  CHECK_THROWS_WITH_AS(perturbation_probe(S3, Vec::Unit(3, 0) + Ystar, 1e-3, 1.0, 2, 1),
                       doctest::Contains("E_NOT_EQUILIBRIUM"), Error);
}

TEST_CASE("equilibria stay fixed under the flow") {
  auto S = split_builtin("h3_plus_h3");
  const Vec Z1 = Vec::Unit(6, 2);
  const Mat K = equilibria(S, Z1);
  REQUIRE(K.cols() == 2);
  for (Eigen::Index c = 0; c < K.cols(); ++c) {
    const Vec Ystar = K.col(c) + Z1;
    auto tr = flow_exact(S, std::nullopt, Ystar, {0.0, 2.5, 5.0});
    for (const auto& st : tr.states) CHECK((st - Ystar).norm() <= 1e-12);
  }
}

TEST_CASE("flow invariants across the catalog (property)") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto S = split_builtin(name);
    const Vec Y0 = seeded_state(S, 47, 0);
    const auto times = linspace(0.0, 10.0, 21);
    auto tr = flow_exact(S, std::nullopt, Y0, times);

    const Mat tangent = coadjoint_orbit(S, Y0).tangent_basis;
    for (size_t k = 0; k < times.size(); ++k) {
      // Casimir: exact zero drift by construction
      CHECK(tr.center_drift[k] == 0.0);
      // orbit containment: Y(t) - Y(0) in Im j(Y_z)
      const Vec diff = tr.states[k] - tr.states[0];
      if (tangent.cols() > 0) {
        const Vec resid = diff - tangent * (tangent.transpose() * tangent)
                                              .ldlt()
                                              .solve(tangent.transpose() * diff);
        CHECK(resid.norm() <= 1e-9 * std::max(1.0, diff.norm()));
      } else {
        CHECK(diff.norm() <= 1e-12);
      }
    }

    // energy conservation, scaled by the size of the quantities entering H
    double envelope = 1.0;
    for (const auto& st : tr.states) envelope = std::max(envelope, st.squaredNorm());
    for (size_t k = 0; k < times.size(); ++k)
      CHECK(std::abs(tr.energy_drift[k]) <=
            1e-10 * std::max({1.0, std::abs(tr.hamiltonian[0]), envelope}));

    // terminal state agrees with RK4 relative to the trajectory scale
    const Vec rk = oracles::rk4_flow(S, std::nullopt, Y0, 10.0, 1e-4);
    CHECK((tr.states.back() - rk).norm() <= 1e-8 * std::sqrt(envelope));
  }
}

TEST_CASE("Casimir holds in an ambient cross-check integrator") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto S = split_builtin(name);
    const Vec Y0 = seeded_state(S, 59, 0);
    const Vec yz0 = S.z_part(Y0);
    const Vec end = oracles::rk4_ambient(S, Y0, 5.0, 5e-3);
    CHECK((S.z_part(end) - yz0).norm() <= 1e-10 * std::max(1.0, yz0.norm()));
    const Vec exact = flow_state(S, std::nullopt, Y0, 5.0);
    CHECK((end - exact).norm() <= 1e-6 * std::max(1.0, exact.norm()));
  }
}

TEST_CASE("coadjoint orbit formula vs group action (property)") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto S = split_builtin(name);
    for (uint64_t i = 0; i < 100; ++i) {
      auto rng = oracles::rng_for(53, i);
      const Vec U = oracles::gaussian_vector(rng, S.dim());
      const Vec Y = oracles::gaussian_vector(rng, S.dim());
      // (id + (ad_U)^T) Y - Y must land in Im j(Y_z)
      const Vec moved = ad_transpose(S, U) * Y;
      const Mat tangent = coadjoint_orbit(S, Y).tangent_basis;
      if (tangent.cols() == 0) {
        CHECK(moved.norm() <= 1e-9 * std::max(1.0, Y.norm() * U.norm()));
        continue;
      }
      const Vec resid = moved - tangent * (tangent.transpose() * tangent)
                                            .ldlt()
                                            .solve(tangent.transpose() * moved);
      CHECK(resid.norm() <= 1e-9 * std::max(1.0, moved.norm()));
    }
  }
}
