#include "hodgesamp/complex.hpp"

#include <numeric>
#include <set>
#include <string>

#include "hodgesamp/error.hpp"

namespace hodgesamp {

namespace {

std::string describe(const Edge& e) {
  return "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ")";
}

std::string describe(const Triangle& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

void check_node(Index v, Index num_nodes) {
  if (v < 0 || v >= num_nodes) {
    throw Error(Errc::index_out_of_range,
                "node " + std::to_string(v) + " not in [0, " + std::to_string(num_nodes) + ")");
  }
}

}  // namespace

SimplicialComplex SimplicialComplex::build(Index num_nodes, std::vector<Edge> edges,
                                           std::vector<Triangle> triangles) {
  if (num_nodes < 0) throw Error(Errc::invalid_argument, "negative node count");

  SimplicialComplex c;
  c.num_nodes_ = num_nodes;

  for (Index k = 0; k < static_cast<Index>(edges.size()); ++k) {
    const Edge& e = edges[k];
    check_node(e[0], num_nodes);
    check_node(e[1], num_nodes);
    if (e[0] >= e[1]) throw Error(Errc::non_canonical_simplex, "edge " + describe(e));
    if (!c.edge_lookup_.emplace(e, k).second) {
      throw Error(Errc::duplicate_simplex, "edge " + describe(e));
    }
  }

  std::set<Triangle> seen;
  for (const Triangle& t : triangles) {
    for (Index v : t) check_node(v, num_nodes);
    if (!(t[0] < t[1] && t[1] < t[2])) {
      throw Error(Errc::non_canonical_simplex, "triangle " + describe(t));
    }
    if (!seen.insert(t).second) throw Error(Errc::duplicate_simplex, "triangle " + describe(t));
    for (const Edge& face : {Edge{t[0], t[1]}, Edge{t[1], t[2]}, Edge{t[0], t[2]}}) {
      if (!c.edge_lookup_.contains(face)) {
        throw Error(Errc::missing_edge, "triangle " + describe(t) + " lacks edge " + describe(face));
      }
    }
  }

  c.edges_ = std::move(edges);
  c.triangles_ = std::move(triangles);

  const Index n1 = c.num_edges();
  const Index n2 = c.num_triangles();
  c.b1_ = Eigen::MatrixXd::Zero(num_nodes, n1);
  for (Index k = 0; k < n1; ++k) {
    c.b1_(c.edges_[k][0], k) = -1.0;
    c.b1_(c.edges_[k][1], k) = 1.0;
  }
  c.b2_ = Eigen::MatrixXd::Zero(n1, n2);
  for (Index t = 0; t < n2; ++t) {
    const auto [i, j, k] = c.triangles_[t];
    c.b2_(c.edge_lookup_.at({i, j}), t) = 1.0;
    c.b2_(c.edge_lookup_.at({j, k}), t) = 1.0;
    c.b2_(c.edge_lookup_.at({i, k}), t) = -1.0;
  }

  // Small-integer products are exact in double precision.
  if (n1 > 0 && n2 > 0 && (c.b1_ * c.b2_).cwiseAbs().maxCoeff() != 0.0) {
    throw Error(Errc::invalid_complex, "boundary of boundary is nonzero");
  }
  return c;
}

std::optional<Index> SimplicialComplex::edge_index(Edge e) const {
  auto it = edge_lookup_.find(e);
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

HodgeLaplacians hodge_laplacians(const SimplicialComplex& c) {
  HodgeLaplacians h;
  const auto& b1 = c.b1();
  const auto& b2 = c.b2();
  h.l0 = b1 * b1.transpose();
  h.l_low = b1.transpose() * b1;
  h.l_up = b2 * b2.transpose();
  h.l2 = b2.transpose() * b2;
  h.l1 = h.l_low + h.l_up;
  return h;
}

Index connected_components(const SimplicialComplex& c) {
  const Index n = c.num_nodes();
  std::vector<std::vector<Index>> adj(static_cast<std::size_t>(n));
  for (const auto& [i, j] : c.edges()) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<char> visited(static_cast<std::size_t>(n), 0);
  std::vector<Index> stack;
  Index components = 0;
  for (Index s = 0; s < n; ++s) {
    if (visited[s]) continue;
    ++components;
    visited[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Index v = stack.back();
      stack.pop_back();
      for (Index w : adj[v]) {
        if (!visited[w]) {
          visited[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

Index first_betti_number(const SimplicialComplex& c) {
  // rank(B1) is combinatorial; rank(B2) goes through a rank-revealing QR.
  const Index rank_b1 = c.num_nodes() - connected_components(c);
  Index rank_b2 = 0;
  if (c.num_triangles() > 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(c.b2());
    qr.setThreshold(1e-10);
    rank_b2 = qr.rank();
  }
  return c.num_edges() - rank_b1 - rank_b2;
}

}  // namespace hodgesamp
