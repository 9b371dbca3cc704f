#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "hodgesamp/complex.hpp"
#include "hodgesamp/delaunay.hpp"

namespace hodgesamp {

/// Seven nodes, ten edges, two filled triangles, two independent cycles:
/// edges (0,1) (0,2) (1,2) (1,3) (2,3) (3,4) (3,5) (4,5) (4,6) (5,6),
/// triangles (0,1,2) (3,4,5).
SimplicialComplex small_complex();

struct TwoHoleConfig {
  Index num_points = 300;
  std::uint64_t seed = 7;
  std::array<Point2, 2> hole_centers{Point2{0.3, 0.5}, Point2{0.7, 0.5}};
  std::array<double, 2> hole_radii{0.12, 0.12};
  Point2 box_min{0.0, 0.0};
  Point2 box_max{1.0, 1.0};

  /// Throws unless holes lie inside the box and counts are sane.
  void validate() const;
};

struct TwoHoleComplex {
  SimplicialComplex complex;
  std::vector<Point2> points;  ///< coordinates of node i
};

/**
 * Point cloud with two circular holes, triangulated and filled.
 *
 * Points are drawn uniformly in the box, rejecting draws inside a hole
 * disk. After Delaunay triangulation, a triangle is dropped when a vertex
 * or its circumcenter lies inside a hole disk; an edge is dropped when it
 * borders only dropped triangles. Every remaining triangle is filled.
 *
 * The result must be connected and have as many independent cycles as
 * holes of positive radius; otherwise Errc::invalid_complex is thrown and
 * the caller should change the radii or the seed.
 */
TwoHoleComplex two_hole_complex(const TwoHoleConfig& cfg);

}  // namespace hodgesamp
