#include "hodgesamp/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "hodgesamp/error.hpp"

namespace hodgesamp {

double orient2d(const Point2& a, const Point2& b, const Point2& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

bool in_circumcircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;
  const double bc = bdx * cdy - cdx * bdy;
  const double ca = cdx * ady - adx * cdy;
  const double ab = adx * bdy - bdx * ady;
  const double det = alift * bc + blift * ca + clift * ab;
  const double magnitude = alift * std::abs(bc) + blift * std::abs(ca) + clift * std::abs(ab);
  return det > 1e-12 * magnitude;
}

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c) {
  const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
  const double a2 = a.x * a.x + a.y * a.y;
  const double b2 = b.x * b.x + b.y * b.y;
  const double c2 = c.x * c.x + c.y * c.y;
  return {(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
          (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

std::vector<Triangle> delaunay_triangulate(std::span<const Point2> input) {
  const Index n = static_cast<Index>(input.size());
  if (n < 3) return {};

  std::vector<Point2> pts(input.begin(), input.end());
  auto [min_x, max_x] = std::minmax_element(pts.begin(), pts.end(),
                                            [](const Point2& p, const Point2& q) { return p.x < q.x; });
  auto [min_y, max_y] = std::minmax_element(pts.begin(), pts.end(),
                                            [](const Point2& p, const Point2& q) { return p.y < q.y; });
  const double cx = 0.5 * (min_x->x + max_x->x);
  const double cy = 0.5 * (min_y->y + max_y->y);
  const double span = std::max({max_x->x - min_x->x, max_y->y - min_y->y, 1e-12});
  pts.push_back({cx - 20.0 * span, cy - span});
  pts.push_back({cx + 20.0 * span, cy - span});
  pts.push_back({cx, cy + 20.0 * span});

  // Counter-clockwise vertex triples.
  std::vector<Triangle> tris{{n, n + 1, n + 2}};
  std::vector<Triangle> kept;

  for (Index v = 0; v < n; ++v) {
    const Point2& p = pts[v];
    kept.clear();
    std::vector<Triangle> cavity;
    for (const Triangle& t : tris) {
      if (in_circumcircle(pts[t[0]], pts[t[1]], pts[t[2]], p)) {
        cavity.push_back(t);
      } else {
        kept.push_back(t);
      }
    }
    if (cavity.empty()) {
      throw Error(Errc::invalid_argument, "point " + std::to_string(v) + " duplicates an earlier point");
    }
    // Directed cavity edges; an edge shared by two cavity triangles appears
    // once in each direction and cancels.
    std::map<Edge, Edge> directed;
    for (const Triangle& t : cavity) {
      for (int k = 0; k < 3; ++k) {
        const Index a = t[k], b = t[(k + 1) % 3];
        const Edge key{std::min(a, b), std::max(a, b)};
        if (auto it = directed.find(key); it != directed.end()) {
          directed.erase(it);
        } else {
          directed.emplace(key, Edge{a, b});
        }
      }
    }
    for (const auto& [key, e] : directed) kept.push_back({e[0], e[1], v});
    tris.swap(kept);
  }

  std::vector<Triangle> out;
  for (const Triangle& t : tris) {
    if (t[0] >= n || t[1] >= n || t[2] >= n) continue;
    Triangle s = t;
    std::sort(s.begin(), s.end());
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hodgesamp
