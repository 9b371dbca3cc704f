#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace hodgesamp {

using Index = Eigen::Index;
using Edge = std::array<Index, 2>;
using Triangle = std::array<Index, 3>;

/**
 * Oriented simplicial complex truncated at order 2.
 *
 * Edges (i, j) carry i < j and are oriented i -> j. Triangles (i, j, k)
 * carry i < j < k and are oriented cyclically i -> j -> k, so their
 * boundary is (i,j) + (j,k) - (i,k). The incidence matrices hold small
 * integers in a double matrix; b1 * b2 == 0 holds exactly and is checked
 * when the complex is built.
 *
 * Instances are immutable once built.
 */
class SimplicialComplex {
 public:
  /// Empty complex.
  SimplicialComplex() = default;

  /// Validates the simplex lists and builds both incidence matrices.
  /// Throws Error on out-of-range indices, non-canonical or duplicate
  /// simplices, and triangles whose edges are not listed.
  static SimplicialComplex build(Index num_nodes, std::vector<Edge> edges,
                                 std::vector<Triangle> triangles);

  Index num_nodes() const { return num_nodes_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }
  Index num_triangles() const { return static_cast<Index>(triangles_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// N0 x N1 node-to-edge incidence.
  const Eigen::MatrixXd& b1() const { return b1_; }
  /// N1 x N2 edge-to-triangle incidence.
  const Eigen::MatrixXd& b2() const { return b2_; }

  std::optional<Index> edge_index(Edge e) const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.num_nodes_ == b.num_nodes_ && a.edges_ == b.edges_ && a.triangles_ == b.triangles_;
  }

 private:
  Index num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<Triangle> triangles_;
  std::map<Edge, Index> edge_lookup_;
  Eigen::MatrixXd b1_;
  Eigen::MatrixXd b2_;
};

inline SimplicialComplex build_complex(Index num_nodes, std::vector<Edge> edges,
                                       std::vector<Triangle> triangles) {
  return SimplicialComplex::build(num_nodes, std::move(edges), std::move(triangles));
}

struct HodgeLaplacians {
  Eigen::MatrixXd l0;     ///< B1 B1^T
  Eigen::MatrixXd l1;     ///< l_low + l_up
  Eigen::MatrixXd l2;     ///< B2^T B2
  Eigen::MatrixXd l_low;  ///< B1^T B1
  Eigen::MatrixXd l_up;   ///< B2 B2^T
};

HodgeLaplacians hodge_laplacians(const SimplicialComplex& c);

/// Number of connected components of the 1-skeleton (isolated nodes count).
Index connected_components(const SimplicialComplex& c);

/// First Betti number from ranks: N1 - rank(B1) - rank(B2).
Index first_betti_number(const SimplicialComplex& c);

}  // namespace hodgesamp
