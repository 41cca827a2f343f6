#pragma once

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "l1geo/ballgeo.hpp"
#include "l1geo/dict.hpp"
#include "l1geo/solset.hpp"

namespace l1geo::testing {

inline Matrix setting3d_dt() {
  Matrix dt(3, 3);
  dt << 1, 1, 0, 1, 0, 1, 2, 1, 1;
  return dt;
}

inline Matrix setting3d_phi() {
  Matrix phi(3, 3);
  phi << 1, 1, 1, 3, 1, 1, std::sqrt(2.0), 0, 0;
  return phi;
}

inline Dictionary setting3d_dict() { return Dictionary(setting3d_dt().transpose()); }

inline ProblemInstance setting3d() {
  Vector y(3);
  y << 1, 1, 0;
  return ProblemInstance(setting3d_dict(), setting3d_phi(), y, 0.5);
}

inline Dictionary k4() { return dict::incidence_dict(dict::complete_graph_edges(4), 4); }

inline ProblemInstance tv3_instance(double lambda = 1.0) {
  Matrix phi(2, 3);
  phi << 1, -2, 1, 0, 1, 0;
  Vector x(3);
  x << 1, 1, 2;
  return ProblemInstance(dict::difference_dict(3), phi, phi * x + lambda * Vector::Unit(2, 0), lambda);
}

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

inline Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

inline double max_abs(const Vector& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

/// Signs of D^* x over the integer grid {lo..hi}^n.
inline std::set<SignVector> grid_signs(const Dictionary& dict, int lo, int hi) {
  std::set<SignVector> out;
  const Eigen::Index n = dict.n();
  std::vector<int> x(static_cast<std::size_t>(n), lo);
  while (true) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = x[static_cast<std::size_t>(i)];
    out.insert(sign_of(dict.analysis(v)));
    Eigen::Index k = 0;
    while (k < n && x[static_cast<std::size_t>(k)] == hi) x[static_cast<std::size_t>(k++)] = lo;
    if (k == n) break;
    ++x[static_cast<std::size_t>(k)];
  }
  return out;
}

/// Sign vectors sign(x_u - x_v) over the edges with x the indicator of a
/// nonempty proper vertex subset.
inline std::set<SignVector> two_block_signs(const std::vector<dict::Edge>& edges, int n_vertices) {
  std::set<SignVector> out;
  for (int mask = 1; mask + 1 < (1 << n_vertices); ++mask) {
    SignVector s(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      s.set(e, ((mask >> edges[e].first) & 1) - ((mask >> edges[e].second) & 1));
    }
    out.insert(s);
  }
  return out;
}

}  // namespace l1geo::testing
