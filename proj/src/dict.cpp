#include "l1geo/dict.hpp"

#include <numeric>

namespace l1geo::dict {

Dictionary identity_dict(Eigen::Index n) {
  if (n < 1) throw InputError("identity_dict: n must be positive");
  return Dictionary(Matrix::Identity(n, n));
}

Dictionary difference_dict(Eigen::Index n) {
  if (n < 2) throw InputError("difference_dict: need at least 2 points");
  Matrix d = Matrix::Zero(n, n - 1);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    d(i, i) = -1.0;
    d(i + 1, i) = 1.0;
  }
  return Dictionary(d);
}

Dictionary incidence_dict(const std::vector<Edge>& edges, int n_vertices) {
  if (n_vertices < 1 || edges.empty()) throw InputError("incidence_dict: empty graph");
  Matrix d = Matrix::Zero(n_vertices, static_cast<Eigen::Index>(edges.size()));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const auto [u, v] = edges[k];
    if (u < 0 || v < 0 || u >= n_vertices || v >= n_vertices || u == v) {
      throw InputError("incidence_dict: invalid edge");
    }
    d(u, static_cast<Eigen::Index>(k)) = 1.0;
    d(v, static_cast<Eigen::Index>(k)) = -1.0;
  }
  return Dictionary(d);
}

std::vector<Edge> complete_graph_edges(int n_vertices) {
  std::vector<Edge> edges;
  for (int i = 0; i < n_vertices; ++i) {
    for (int j = i + 1; j < n_vertices; ++j) edges.emplace_back(i, j);
  }
  return edges;
}

Dictionary fused_lasso_dict(Eigen::Index n) {
  if (n < 1) throw InputError("fused_lasso_dict: n must be positive");
  Matrix d = Matrix::Zero(n, 2 * n - 1);
  d.leftCols(n).setIdentity();
  if (n > 1) d.rightCols(n - 1) = difference_dict(n).d();
  return Dictionary(d);
}

int connected_components(const std::vector<Edge>& edges, int n_vertices) {
  std::vector<int> parent(static_cast<std::size_t>(n_vertices));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
    }
    return v;
  };
  int components = n_vertices;
  for (const auto& [u, v] : edges) {
    const int a = find(u), b = find(v);
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --components;
    }
  }
  return components;
}

bool kernels_intersect_trivially(const Dictionary& dict, const Matrix& phi, const Tolerances& tol) {
  if (phi.cols() != dict.n()) throw InputError("Phi and D act on spaces of different dimension");
  const Matrix blocks[] = {phi, dict.dt()};
  return linalg::intersect_null_spaces(blocks, tol).cols() == 0;
}

}  // namespace l1geo::dict
