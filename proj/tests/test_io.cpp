#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nilflow/constructors.hpp"
#include "nilflow/io.hpp"
#include "oracles.hpp"

using namespace nilflow;

TEST_CASE("format_double round-trips bit-exactly") {
  auto rng = oracles::rng_for(113, 0);
  std::normal_distribution<double> g;
  std::vector<double> values = {0.0,    1.0,   -1.0,     M_PI,   1.0 / 3.0,
                                1e-300, 1e300, -2.5e-17, 6.02e23};
  for (int i = 0; i < 50; ++i) values.push_back(std::ldexp(g(rng), i % 40 - 20));
  for (double v : values) {
    const double back = std::stod(format_double(v));
    CHECK(back == v);
  }
}

TEST_CASE("trajectory CSV round-trips states bit-exactly") {
  auto [A, P] = builtin("metivier5");
  auto S = Splitting::make(std::move(A), std::move(P));
  Vec Y0(5);
  Y0 << 0.3, -0.2, 0.5, 0.1, 0.7;
  const auto tr = flow_exact(S, std::nullopt, Y0, {0.0, 0.7, 1.9});

  std::ostringstream os;
  write_trajectory_csv(os, tr);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "t,Y_1,Y_2,Y_3,Y_4,Y_5,H,dH,dJ");
  std::string line;
  size_t row = 0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    std::vector<double> vals;
    while (std::getline(ls, tok, ',')) vals.push_back(std::stod(tok));
    REQUIRE(vals.size() == 9);
    CHECK(vals[0] == tr.times[row]);
    for (int i = 0; i < 5; ++i) CHECK(vals[static_cast<size_t>(1 + i)] == tr.states[row](i));
    CHECK(vals[6] == tr.hamiltonian[row]);
    ++row;
  }
  CHECK(row == 3);
}

TEST_CASE("matrix CSV layout") {
  Mat M(2, 3);
  M << 1, 0.5, -2, 0, 1e-9, 3;
  std::ostringstream os;
  write_matrix_csv(os, M);
  CHECK(os.str() == "1,0.5,-2\n0,1.0000000000000001e-09,3\n");
}

TEST_CASE("blocks document errors") {
  auto [A, P] = builtin("heisenberg3");
  auto S = Splitting::make(std::move(A), std::move(P));
  CHECK_THROWS_WITH_AS(load_blocks_file("/tmp/definitely_missing_blocks.json", S),
                       doctest::Contains("E_IO"), Error);
}
