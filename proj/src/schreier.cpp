#include "selfsim/schreier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "selfsim/group_analysis.hpp"

namespace selfsim {

SchreierLevelGraph schreier_level_graph(const Automaton& a, std::size_t n) {
  SchreierLevelGraph g;
  g.level = n;
  g.vertex_count = level_size(a.alphabet_size(), n);
  const auto perms = level_permutations(a, n);
  for (StateId s = 0; s < a.state_count(); ++s)
    for (std::size_t v = 0; v < g.vertex_count; ++v) g.arcs.push_back({v, s, perms[s][v]});
  return g;
}

bool Matrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

Matrix operator_matrix(const Automaton& a, std::size_t n, bool symmetrize,
                       const std::vector<StateId>& generators) {
  const std::size_t size = level_size(a.alphabet_size(), n);
  const auto perms = level_permutations(a, n);
  std::vector<StateId> gens = generators;
  if (gens.empty())
    for (StateId s = 0; s < a.state_count(); ++s) gens.push_back(s);
  Matrix m(size);
  const double w = 1.0 / static_cast<double>(symmetrize ? 2 * gens.size() : gens.size());
  for (StateId s : gens)
    for (std::size_t v = 0; v < size; ++v) {
      m(v, perms.at(s)[v]) += w;
      if (symmetrize) m(perms[s][v], v) += w;
    }
  return m;
}

Histogram make_histogram(const std::vector<double>& values, std::size_t bins, double lo, double hi) {
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  if (bins == 0) return h;
  for (double x : values) {
    const double t = (x - lo) / (hi - lo) * static_cast<double>(bins);
    long k = static_cast<long>(std::floor(t));
    k = std::clamp<long>(k, 0, static_cast<long>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(k)];
  }
  return h;
}

namespace {

double max_off_diagonal(const Matrix& a) {
  double r = 0.0;
  for (std::size_t i = 0; i < a.n; ++i)
    for (std::size_t j = i + 1; j < a.n; ++j) r = std::max(r, std::abs(a(i, j)));
  return r;
}

}  // namespace

SpectrumResult symmetric_spectrum(const Matrix& m, double tol, std::size_t bins) {
  if (!m.is_symmetric(1e-12)) throw NotSymmetric("matrix is not symmetric");
  Matrix a = m;
  const std::size_t n = a.n;
  SpectrumResult r;
  constexpr std::size_t kMaxSweeps = 100;
  r.residual = max_off_diagonal(a);
  while (r.residual >= tol && r.sweeps < kMaxSweeps) {
    ++r.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < tol * 1e-3) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    r.residual = max_off_diagonal(a);
  }
  for (std::size_t i = 0; i < n; ++i) r.eigenvalues.push_back(a(i, i));
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());
  r.histogram = make_histogram(r.eigenvalues, bins);
  return r;
}

SpectrumResult level_spectrum(const Automaton& a, std::size_t n, bool symmetrize, std::size_t bins) {
  return symmetric_spectrum(operator_matrix(a, n, symmetrize), 1e-10, bins);
}

void write_eigenvalues_csv(std::ostream& out, const SpectrumResult& r) {
  char buf[64];
  for (double x : r.eigenvalues) {
    // clean up negative zero
    std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
    out << buf << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h) {
  char buf[128];
  out << "bin_left,bin_right,count\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.15g,%.15g,%zu", h.bin_left(k), h.bin_right(k), h.counts[k]);
    out << buf << '\n';
  }
}

}  // namespace selfsim
