#pragma once

#include <array>
#include <span>
#include <vector>

#include "hodgesamp/complex.hpp"

namespace hodgesamp {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Twice the signed area of (a, b, c); positive when counter-clockwise.
double orient2d(const Point2& a, const Point2& b, const Point2& c);

/// True when d lies strictly inside the circumcircle of the
/// counter-clockwise triangle (a, b, c), beyond a relative guard of 1e-12.
bool in_circumcircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c);

/**
 * Delaunay triangulation by incremental Bowyer-Watson insertion in index
 * order, bootstrapped from a large enclosing triangle.
 *
 * Returned triangles have sorted vertex indices. Cocircular configurations
 * resolve by insertion order, so the output is deterministic for a fixed
 * input.
 */
std::vector<Triangle> delaunay_triangulate(std::span<const Point2> points);

}  // namespace hodgesamp
