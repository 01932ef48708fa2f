#include <benchmark/benchmark.h>

#include <random>

#include "nilflow/cartan.hpp"
#include "nilflow/constructors.hpp"
#include "nilflow/dynamics.hpp"
#include "nilflow/expm.hpp"
#include "nilflow/spectrum.hpp"

namespace nf = nilflow;

namespace {

nf::Mat gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  nf::Mat M(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) M(r, c) = g(rng);
  return M;
}

nf::Splitting splitting(const std::string& name) {
  auto [A, P] = nf::builtin(name);
  return nf::Splitting::make(std::move(A), std::move(P));
}

void BM_Expm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const nf::Mat A = gaussian(rng, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(nf::expm(A));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Expm)->RangeMultiplier(2)->Range(2, 32)->Complexity();

void BM_ClassifyEigenvalues(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  nf::Mat S = gaussian(rng, 2 * n);
  S = 0.5 * (S + S.transpose()).eval();
  nf::Mat J = nf::Mat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = -nf::Mat::Identity(n, n);
  J.bottomLeftCorner(n, n) = nf::Mat::Identity(n, n);
  const nf::Mat M = J.transpose() * S;
  for (auto _ : state) benchmark::DoNotOptimize(nf::classify_eigenvalues(M));
}
BENCHMARK(BM_ClassifyEigenvalues)->DenseRange(2, 8, 2);

void BM_JOperator(benchmark::State& state) {
  const auto S = splitting("metivier5");
  const nf::Vec Z = nf::Vec::Unit(5, 4);
  for (auto _ : state) benchmark::DoNotOptimize(nf::j_operator(S, Z));
}
BENCHMARK(BM_JOperator);

void BM_FlowSample(benchmark::State& state) {
  const auto S = splitting("metivier5");
  nf::Vec Y0(5);
  Y0 << 0.3, -0.2, 0.5, 0.1, 0.7;
  std::vector<double> times;
  for (int i = 0; i < 64; ++i) times.push_back(0.1 * i);
  for (auto _ : state) benchmark::DoNotOptimize(nf::flow_exact(S, std::nullopt, Y0, times));
}
BENCHMARK(BM_FlowSample);

void BM_IndefiniteSVD(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int m = static_cast<int>(state.range(0));
  nf::Mat phi;
  const nf::Signature sig{m / 2, m - m / 2};
  // keep one accepted instance; hypotheses may reject draws
  for (;;) {
    phi = gaussian(rng, m);
    try {
      (void)nf::indefinite_svd(phi, sig, sig);
      break;
    } catch (const nf::Error&) {
    }
  }
  for (auto _ : state) benchmark::DoNotOptimize(nf::indefinite_svd(phi, sig, sig));
}
BENCHMARK(BM_IndefiniteSVD)->DenseRange(2, 6, 2);

void BM_CartanCrossCheck(benchmark::State& state) {
  nf::CartanParams P;
  P.family = nf::CartanFamily::D;
  P.p = 4;
  P.q = 6;
  P.ell = 1;
  P.k = 1;
  for (auto _ : state) benchmark::DoNotOptimize(nf::cross_check(P, 16, 9));
}
BENCHMARK(BM_CartanCrossCheck);

}  // namespace

BENCHMARK_MAIN();
