#pragma once

#include <utility>
#include <vector>

#include "l1geo/ballgeo.hpp"

namespace l1geo::dict {

using Edge = std::pair<int, int>;

/// D = Id: the Lasso.
Dictionary identity_dict(Eigen::Index n);

/// Forward differences on n points: row i of D^* is e_{i+1} - e_i (p = n - 1).
Dictionary difference_dict(Eigen::Index n);

/// Graph incidence: the column for edge (u, v) is e_u - e_v.
Dictionary incidence_dict(const std::vector<Edge>& edges, int n_vertices);

/// Edges (i, j), i < j, of the complete graph, in lexicographic order.
std::vector<Edge> complete_graph_edges(int n_vertices);

/// Identity followed by forward differences (p = 2n - 1).
Dictionary fused_lasso_dict(Eigen::Index n);

/// Number of connected components of the graph; equals dim Ker D^* of its
/// incidence dictionary.
int connected_components(const std::vector<Edge>& edges, int n_vertices);

/// Ker Phi cap Ker D^* = {0}: the solution set is compact. For incidence
/// dictionaries, Phi must not vanish on the constants of any component.
bool kernels_intersect_trivially(const Dictionary& dict, const Matrix& phi,
                                 const Tolerances& tol = {});

}  // namespace l1geo::dict
