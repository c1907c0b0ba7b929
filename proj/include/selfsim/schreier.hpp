#pragma once

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "selfsim/automaton.hpp"

namespace selfsim {

struct SchreierArc {
  std::size_t from;
  StateId generator;
  std::size_t to;
};

/// Level-n Schreier graph: vertices are indices of the d^n words.
struct SchreierLevelGraph {
  std::size_t level = 0;
  std::size_t vertex_count = 0;
  std::vector<SchreierArc> arcs;  // grouped by generator, then by source vertex
};

SchreierLevelGraph schreier_level_graph(const Automaton& a, std::size_t n);

/// Dense row-major square matrix.
struct Matrix {
  std::size_t n = 0;
  std::vector<double> data;
  explicit Matrix(std::size_t size = 0) : n(size), data(size * size, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  bool is_symmetric(double tol = 0.0) const;
};

/// Average of the generator permutation matrices at level n, or of the
/// generators and their inverses when symmetrize is set. Entry (i, j) is
/// the weight of the arcs from vertex i to vertex j. The generators are all
/// states unless listed.
Matrix operator_matrix(const Automaton& a, std::size_t n, bool symmetrize = true,
                       const std::vector<StateId>& generators = {});

class NotSymmetric : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Histogram {
  double lo = -1.0;
  double hi = 1.0;
  std::vector<std::size_t> counts;
  double bin_left(std::size_t k) const { return lo + (hi - lo) * static_cast<double>(k) / counts.size(); }
  double bin_right(std::size_t k) const { return lo + (hi - lo) * static_cast<double>(k + 1) / counts.size(); }
};

Histogram make_histogram(const std::vector<double>& values, std::size_t bins = 64, double lo = -1.0,
                         double hi = 1.0);

struct SpectrumResult {
  std::vector<double> eigenvalues;  // ascending
  Histogram histogram;
  double residual = 0.0;  // largest off-diagonal magnitude at exit
  std::size_t sweeps = 0;
};

/// Cyclic Jacobi rotations until every off-diagonal entry is below tol.
SpectrumResult symmetric_spectrum(const Matrix& m, double tol = 1e-10, std::size_t bins = 64);

/// Spectrum of the level-n operator.
SpectrumResult level_spectrum(const Automaton& a, std::size_t n, bool symmetrize = true,
                              std::size_t bins = 64);

void write_eigenvalues_csv(std::ostream& out, const SpectrumResult& r);
void write_histogram_csv(std::ostream& out, const Histogram& h);

}  // namespace selfsim
