#include "doctest.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "selfsim/dot.hpp"
#include "selfsim/schreier.hpp"
#include "selfsim/tree_action.hpp"

using namespace selfsim;

namespace {

std::vector<double> eigen_oracle(const Matrix& m) {
  Eigen::MatrixXd e(m.n, m.n);
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(e, Eigen::EigenvaluesOnly);
  const auto& v = solver.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

}  // namespace

TEST_CASE("Schreier graphs") {
  const auto g = schreier_level_graph(decode_number(731), 1);
  CHECK(g.vertex_count == 2);
  CHECK(g.arcs.size() == 6);
  for (const auto& arc : g.arcs) {
    if (arc.generator == 0)
      CHECK(arc.to == 1 - arc.from);
    else
      CHECK(arc.to == arc.from);
  }
  for (const auto& arc : schreier_level_graph(decode_number(1), 3).arcs) CHECK(arc.to == arc.from);

  // odometer orbit 00 -> 10 -> 01 -> 11 -> 00 in vertex indices 0, 2, 1, 3
  const auto add = schreier_level_graph(parse_binary_recursion("a=σ(1,a)"), 2);
  std::vector<std::size_t> next(4);
  for (const auto& arc : add.arcs)
    if (arc.generator == 0) next[arc.from] = arc.to;
  CHECK(next == std::vector<std::size_t>{2, 3, 1, 0});
}

TEST_CASE("operator matrices") {
  const Automaton add = parse_binary_recursion("a=σ(1,a)");
  const Matrix m = operator_matrix(add, 1, true, {0});
  CHECK(m.data == std::vector<double>{0, 1, 1, 0});
  const auto r = symmetric_spectrum(m);
  CHECK(r.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(r.eigenvalues[1] == doctest::Approx(1.0));

  const Matrix id = operator_matrix(decode_number(1), 3);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) CHECK(id(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));

  for (std::uint32_t n : {731u, 2240u, 852u}) {
    const Matrix s = operator_matrix(decode_number(n), 4);
    CHECK(s.is_symmetric());
    for (std::size_t i = 0; i < s.n; ++i) {
      double row = 0;
      for (std::size_t j = 0; j < s.n; ++j) row += s(i, j);
      CHECK(row == doctest::Approx(1.0));
    }
  }
  CHECK_FALSE(operator_matrix(decode_number(2240), 3, false).is_symmetric());
  CHECK_THROWS_AS(symmetric_spectrum(operator_matrix(decode_number(2240), 3, false)), NotSymmetric);
}

TEST_CASE("Jacobi spectrum against a library solver") {
  for (std::uint32_t n : {731u, 820u, 852u, 2240u}) {
    const Matrix m = operator_matrix(decode_number(n), 5);
    const auto r = symmetric_spectrum(m);
    const auto want = eigen_oracle(m);
    REQUIRE(r.eigenvalues.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(r.eigenvalues[i] == doctest::Approx(want[i]).epsilon(1e-9));
    CHECK(r.residual < 1e-10);
  }
  Matrix eye(4);
  for (std::size_t i = 0; i < 4; ++i) eye(i, i) = 1.0;
  CHECK(symmetric_spectrum(eye).eigenvalues == std::vector<double>(4, 1.0));
}

TEST_CASE("level 3 spectrum of 731") {
  // a acts as an 8-cycle on level 3 while b = c = a^-2, so the symmetrized
  // operator is a circulant with eigenvalues (cos x + 2 cos 2x) / 3
  const auto r = level_spectrum(decode_number(731), 3);
  std::vector<double> want;
  for (int k = 0; k < 8; ++k) {
    const double x = 2 * M_PI * k / 8;
    want.push_back((std::cos(x) + 2 * std::cos(2 * x)) / 3);
  }
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(r.eigenvalues[i] - want[i]) < 1e-9);
}

TEST_CASE("histograms and CSV") {
  const auto h = make_histogram({-1.0, -0.99, 0.0, 0.5, 1.0}, 4);
  CHECK(h.counts == std::vector<std::size_t>{2, 0, 1, 2});
  CHECK(h.bin_left(1) == doctest::Approx(-0.5));
  std::ostringstream csv;
  write_histogram_csv(csv, h);
  CHECK(csv.str().rfind("bin_left,bin_right,count\n-1,-0.5,2\n", 0) == 0);
  SpectrumResult r;
  r.eigenvalues = {-0.0, 1.0 / 3};
  std::ostringstream ev;
  write_eigenvalues_csv(ev, r);
  CHECK(ev.str() == "0\n0.333333333333333\n");
}

TEST_CASE("DOT output") {
  std::ostringstream moore;
  write_moore_dot(moore, decode_number(731), "m");
  CHECK(moore.str().find("s0 [label=\"a:(01)\"]") != std::string::npos);
  CHECK(moore.str().find("s0 -> s1 [label=\"0|1\"]") != std::string::npos);
  std::ostringstream sch;
  write_schreier_dot(sch, decode_number(731), schreier_level_graph(decode_number(731), 1));
  CHECK(sch.str().find("v0 -> v1 [label=\"a\"]") != std::string::npos);
  std::ostringstream tiles;
  TileGraph t{1, 2, {{0, 1}}};
  write_tile_dot(tiles, decode_number(731), t);
  CHECK(tiles.str().find("v0 -- v1;") != std::string::npos);
}
