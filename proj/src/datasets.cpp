#include "hodgesamp/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "hodgesamp/error.hpp"
#include "hodgesamp/rng.hpp"

namespace hodgesamp {

SimplicialComplex small_complex() {
  return build_complex(7,
                       {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}, {3, 4}, {3, 5}, {4, 5}, {4, 6}, {5, 6}},
                       {{0, 1, 2}, {3, 4, 5}});
}

void TwoHoleConfig::validate() const {
  if (num_points < 3) throw Error(Errc::invalid_argument, "need at least 3 points");
  if (!(box_min.x < box_max.x && box_min.y < box_max.y)) {
    throw Error(Errc::invalid_argument, "empty bounding box");
  }
  for (std::size_t h = 0; h < 2; ++h) {
    const Point2& c = hole_centers[h];
    const double r = hole_radii[h];
    if (!(r >= 0.0)) throw Error(Errc::invalid_argument, "hole radius must be nonnegative");
    if (c.x - r < box_min.x || c.x + r > box_max.x || c.y - r < box_min.y || c.y + r > box_max.y) {
      throw Error(Errc::invalid_argument, "hole " + std::to_string(h) + " leaves the bounding box");
    }
  }
}

namespace {

bool in_hole(const TwoHoleConfig& cfg, const Point2& p) {
  for (std::size_t h = 0; h < 2; ++h) {
    const double r = cfg.hole_radii[h];
    if (r > 0.0 && std::hypot(p.x - cfg.hole_centers[h].x, p.y - cfg.hole_centers[h].y) < r) {
      return true;
    }
  }
  return false;
}

}  // namespace

TwoHoleComplex two_hole_complex(const TwoHoleConfig& cfg) {
  cfg.validate();

  Rng rng(cfg.seed);
  std::uniform_real_distribution<double> ux(cfg.box_min.x, cfg.box_max.x);
  std::uniform_real_distribution<double> uy(cfg.box_min.y, cfg.box_max.y);
  std::vector<Point2> points;
  points.reserve(static_cast<std::size_t>(cfg.num_points));
  while (static_cast<Index>(points.size()) < cfg.num_points) {
    const double x = ux(rng);
    const double y = uy(rng);
    if (!in_hole(cfg, {x, y})) points.push_back({x, y});
  }

  const std::vector<Triangle> delaunay = delaunay_triangulate(points);

  std::vector<Triangle> kept;
  std::set<Edge> kept_edges;
  for (const Triangle& t : delaunay) {
    const Point2& a = points[t[0]];
    const Point2& b = points[t[1]];
    const Point2& c = points[t[2]];
    const bool drop = in_hole(cfg, a) || in_hole(cfg, b) || in_hole(cfg, c) ||
                      in_hole(cfg, circumcenter(a, b, c));
    if (drop) continue;
    kept.push_back(t);
    kept_edges.insert({t[0], t[1]});
    kept_edges.insert({t[1], t[2]});
    kept_edges.insert({t[0], t[2]});
  }

  // Every Delaunay edge borders a triangle; edges bordering only dropped
  // triangles are the ones interior to a hole.
  std::vector<Edge> edges(kept_edges.begin(), kept_edges.end());
  TwoHoleComplex out{build_complex(cfg.num_points, std::move(edges), std::move(kept)),
                     std::move(points)};

  const Index components = connected_components(out.complex);
  if (components != 1) {
    throw Error(Errc::invalid_complex,
                "two-hole complex has " + std::to_string(components) + " connected components");
  }
  const Index expected_holes = static_cast<Index>(
      std::count_if(cfg.hole_radii.begin(), cfg.hole_radii.end(), [](double r) { return r > 0.0; }));
  const Index betti1 = first_betti_number(out.complex);
  if (betti1 != expected_holes) {
    throw Error(Errc::invalid_complex, "expected " + std::to_string(expected_holes) +
                                           " holes, found " + std::to_string(betti1));
  }
  return out;
}

}  // namespace hodgesamp
