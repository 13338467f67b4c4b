#pragma once

#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "treefold/coset_normal_form.hpp"
#include "treefold/dyadic.hpp"
#include "treefold/word.hpp"

namespace treefold {

// T_i is the Bass-Serre tree of L_i = M *_{G_{i-1}} M_i, viewed as a
// simplicial R-tree in which every edge is isometric to [0, 1/2^{i-1}].
// Vertices are cosets x*M and x*M_i, edges are cosets x*G_{i-1}; the
// parameter of a point on an edge is measured from the M-side endpoint.

template <class Sys>
struct TreeVertex {
  int stage = 1;
  FactorTag side = FactorTag::base;
  GroupWord<Sys> rep;
};

template <class Sys>
struct TreeEdge {
  int stage = 1;
  GroupWord<Sys> rep;
};

template <class Sys>
struct TreePoint {
  TreeEdge<Sys> edge;
  Dyadic t;  // in [0, edge_length(stage)]
};

inline Dyadic edge_length(int stage) { return Dyadic::pow2(1 - stage); }

template <class Sys>
TreeVertex<Sys> fundamental_vertex(int stage, FactorTag side) {
  return TreeVertex<Sys>{stage, side, GroupWord<Sys>::one(stage)};
}

template <class Sys>
TreeEdge<Sys> fundamental_edge(int stage) {
  return TreeEdge<Sys>{stage, GroupWord<Sys>::one(stage)};
}

template <class Sys>
TreeVertex<Sys> endpoint(const TreeEdge<Sys>& e, FactorTag side) {
  return TreeVertex<Sys>{e.stage, side, e.rep};
}

template <class Sys>
TreePoint<Sys> point_on(const TreeEdge<Sys>& e, Dyadic t) {
  if (t.is_negative() || edge_length(e.stage) < t)
    throw std::invalid_argument("TreePoint: parameter outside the edge");
  return TreePoint<Sys>{e, t};
}

// Left action of the group on the tree.
template <class Sys>
TreeVertex<Sys> act(const Sys& sys, const GroupWord<Sys>& g, const TreeVertex<Sys>& v) {
  return TreeVertex<Sys>{v.stage, v.side, mul(sys, g, v.rep)};
}
template <class Sys>
TreeEdge<Sys> act(const Sys& sys, const GroupWord<Sys>& g, const TreeEdge<Sys>& e) {
  return TreeEdge<Sys>{e.stage, mul(sys, g, e.rep)};
}
template <class Sys>
TreePoint<Sys> act(const Sys& sys, const GroupWord<Sys>& g, const TreePoint<Sys>& p) {
  return TreePoint<Sys>{act(sys, g, p.edge), p.t};
}

template <class Sys>
bool vertex_equal(const Sys& sys, const TreeVertex<Sys>& u, const TreeVertex<Sys>& v) {
  if (u.stage != v.stage || u.side != v.side) return false;
  return in_factor(sys, mul(sys, inverse(sys, u.rep), v.rep), u.side);
}

template <class Sys>
bool edge_equal(const Sys& sys, const TreeEdge<Sys>& e, const TreeEdge<Sys>& f) {
  if (e.stage != f.stage) return false;
  return edge_value(sys, mul(sys, inverse(sys, e.rep), f.rep)).has_value();
}

// Stabilizer of the edge x*G_{i-1} is x G_{i-1} x^-1: membership by reduction.
template <class Sys>
bool edge_stabilizer_contains(const Sys& sys, const TreeEdge<Sys>& e, const GroupWord<Sys>& g) {
  if (g.stage != e.stage) throw std::invalid_argument("edge_stabilizer_contains: stage mismatch");
  return edge_value(sys, mul(sys, mul(sys, inverse(sys, e.rep), g), e.rep)).has_value();
}

template <class Sys>
bool vertex_stabilizer_contains(const Sys& sys, const TreeVertex<Sys>& v,
                                const GroupWord<Sys>& g) {
  return vertex_equal(sys, act(sys, g, v), v);
}

// Geodesic between two vertices: the visited vertices and the full edges
// between them, read off the reduced form of u^-1 v.
template <class Sys>
struct VertexPath {
  std::vector<TreeVertex<Sys>> vertices;
  std::vector<TreeEdge<Sys>> edges;
};

template <class Sys>
VertexPath<Sys> vertex_path(const Sys& sys, const TreeVertex<Sys>& u, const TreeVertex<Sys>& v) {
  if (u.stage != v.stage) throw std::invalid_argument("vertex_path: stage mismatch");
  const int stage = u.stage;
  GroupWord<Sys> quot = mul(sys, inverse(sys, u.rep), v.rep);
  for (const auto& s : quot.syls)
    if (s.is_stable()) throw std::invalid_argument("vertex_path: HNN words have no tree");

  VertexPath<Sys> path;
  path.vertices.push_back(u);

  // A reduced quotient inside the edge subgroup means equal cosets.
  bool trivial = quot.syls.empty() ||
                 (quot.syls.size() == 1 && sys.in_level(quot.syls[0].payload, stage - 1));
  if (trivial) {
    if (u.side != v.side) {
      path.edges.push_back(TreeEdge<Sys>{stage, u.rep});
      path.vertices.push_back(v);
    }
    return path;
  }

  GroupWord<Sys> prefix = u.rep;
  FactorTag prev_side = u.side;
  for (std::size_t k = 0; k < quot.syls.size(); ++k) {
    FactorTag here = quot.syls[k].tag;
    if (here != prev_side) {
      path.edges.push_back(TreeEdge<Sys>{stage, prefix});
      path.vertices.push_back(TreeVertex<Sys>{stage, here, prefix});
      prev_side = here;
    }
    GroupWord<Sys> step = GroupWord<Sys>::factor(stage, here, quot.syls[k].payload);
    prefix = mul(sys, prefix, step);
  }
  if (prev_side != v.side) {
    path.edges.push_back(TreeEdge<Sys>{stage, prefix});
    path.vertices.push_back(v);
  }
  return path;
}

template <class Sys>
long vertex_distance_steps(const Sys& sys, const TreeVertex<Sys>& u, const TreeVertex<Sys>& v) {
  return static_cast<long>(vertex_path(sys, u, v).edges.size());
}

template <class Sys>
Dyadic vertex_distance(const Sys& sys, const TreeVertex<Sys>& u, const TreeVertex<Sys>& v) {
  return Dyadic(vertex_distance_steps(sys, u, v), 0) * edge_length(u.stage);
}

// Point-level geodesic data: exact distance plus the full edges traversed.
template <class Sys>
struct PointGeodesic {
  Dyadic distance;
  std::vector<TreeVertex<Sys>> vertices;  // vertex chain between the points
  std::vector<TreeEdge<Sys>> full_edges;  // whole edges inside the geodesic
};

namespace detail {

// Normalizes a boundary point to its vertex descriptor when possible.
template <class Sys>
std::optional<TreeVertex<Sys>> as_vertex(const TreePoint<Sys>& p) {
  if (p.t.is_zero()) return endpoint(p.edge, FactorTag::base);
  if (p.t == edge_length(p.edge.stage)) return endpoint(p.edge, FactorTag::copy);
  return std::nullopt;
}

}  // namespace detail

template <class Sys>
PointGeodesic<Sys> geodesic(const Sys& sys, const TreePoint<Sys>& p, const TreePoint<Sys>& q) {
  if (p.edge.stage != q.edge.stage) throw std::invalid_argument("geodesic: stage mismatch");
  const Dyadic len = edge_length(p.edge.stage);

  auto pv = detail::as_vertex(p);
  auto qv = detail::as_vertex(q);

  if (pv && qv) {
    VertexPath<Sys> vp = vertex_path(sys, *pv, *qv);
    return PointGeodesic<Sys>{Dyadic(static_cast<std::int64_t>(vp.edges.size()), 0) * len,
                              std::move(vp.vertices), std::move(vp.edges)};
  }

  if (!pv && !qv && edge_equal(sys, p.edge, q.edge)) {
    Dyadic d = p.t < q.t ? q.t - p.t : p.t - q.t;
    return PointGeodesic<Sys>{d, {}, {}};
  }

  // The geodesic exits an interior point through one of its edge endpoints;
  // the true distance is the smallest of the endpoint routes.
  struct Route {
    Dyadic total;
    VertexPath<Sys> path;
  };
  std::optional<Route> best;
  auto exits = [&](const TreePoint<Sys>& x) {
    std::vector<std::pair<TreeVertex<Sys>, Dyadic>> out;
    if (auto v = detail::as_vertex(x)) {
      out.emplace_back(*v, Dyadic::zero());
    } else {
      out.emplace_back(endpoint(x.edge, FactorTag::base), x.t);
      out.emplace_back(endpoint(x.edge, FactorTag::copy), len - x.t);
    }
    return out;
  };
  for (const auto& [pu, dp] : exits(p)) {
    for (const auto& [qu, dq] : exits(q)) {
      VertexPath<Sys> vp = vertex_path(sys, pu, qu);
      Dyadic total = dp + dq + Dyadic(static_cast<std::int64_t>(vp.edges.size()), 0) * len;
      if (!best || total < best->total) best = Route{total, std::move(vp)};
    }
  }
  return PointGeodesic<Sys>{best->total, std::move(best->path.vertices),
                            std::move(best->path.edges)};
}

template <class Sys>
Dyadic distance(const Sys& sys, const TreePoint<Sys>& p, const TreePoint<Sys>& q) {
  return geodesic(sys, p, q).distance;
}

template <class Sys>
nlohmann::json point_json(const Sys& sys, const TreePoint<Sys>& p) {
  return nlohmann::json{{"edge", word_json(sys, reduce(sys, p.edge.rep))},
                        {"stage", p.edge.stage},
                        {"t", p.t.to_json()}};
}

template <class Sys>
nlohmann::json geodesic_json(const Sys& sys, const TreePoint<Sys>& p, const TreePoint<Sys>& q) {
  PointGeodesic<Sys> geo = geodesic(sys, p, q);
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : geo.vertices)
    verts.push_back({{"side", v.side == FactorTag::base ? "M" : "M_i"},
                     {"rep", word_json(sys, reduce(sys, v.rep))}});
  return nlohmann::json{{"from", point_json(sys, p)},
                        {"to", point_json(sys, q)},
                        {"distance", geo.distance.to_json()},
                        {"vertices", verts}};
}

template <class Sys>
bool point_equal(const Sys& sys, const TreePoint<Sys>& p, const TreePoint<Sys>& q) {
  return distance(sys, p, q).is_zero();
}

// Exact BFS ball around a vertex of the tree of an enumerable system; doubles
// as the brute-force oracle for distances and as the DOT export surface.
template <class Sys>
struct Ball {
  struct Vertex {
    std::string key;
    TreeVertex<Sys> vertex;
    long dist = 0;
  };
  struct Edge {
    std::string key;
    TreeEdge<Sys> edge;
    std::size_t from = 0, to = 0;  // indices into vertices
  };
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;

  long dist_of(const std::string& key) const {
    for (const auto& v : vertices)
      if (v.key == key) return v.dist;
    return -1;
  }
};

template <class Sys>
Ball<Sys> ball(const Sys& sys, const TreeVertex<Sys>& center, int radius) {
  static_assert(Sys::is_finite, "ball needs an enumerable system (finite transversals)");
  if (radius < 0 || radius > 12) throw std::invalid_argument("ball: radius out of range");
  const int stage = center.stage;
  const int edge = stage - 1;

  Ball<Sys> out;
  std::map<std::string, std::size_t> seen;
  std::map<std::string, bool> seen_edges;
  std::deque<std::size_t> queue;

  auto add_vertex = [&](const TreeVertex<Sys>& v, long dist) {
    std::string key = vertex_coset_key(sys, v.rep, v.side);
    auto it = seen.find(key);
    if (it != seen.end()) return std::pair<std::size_t, bool>{it->second, false};
    out.vertices.push_back({key, v, dist});
    seen.emplace(std::move(key), out.vertices.size() - 1);
    return std::pair<std::size_t, bool>{out.vertices.size() - 1, true};
  };

  add_vertex(center, 0);
  queue.push_back(0);
  while (!queue.empty()) {
    std::size_t at = queue.front();
    queue.pop_front();
    TreeVertex<Sys> v = out.vertices[at].vertex;
    long dist = out.vertices[at].dist;
    if (dist == radius) continue;
    for (const auto& r : sys.transversal(edge)) {
      GroupWord<Sys> step = GroupWord<Sys>::factor(stage, v.side, r);
      GroupWord<Sys> rep = mul(sys, v.rep, step);
      TreeEdge<Sys> e{stage, rep};
      std::string ekey = edge_coset_key(sys, rep);
      if (seen_edges.count(ekey)) continue;
      auto [idx, fresh] = add_vertex(TreeVertex<Sys>{stage, other(v.side), rep}, dist + 1);
      if (!fresh) {
        // Both endpoints known: in a tree this edge must already be recorded.
        bool recorded = false;
        for (const auto& be : out.edges)
          if (be.key == ekey) recorded = true;
        if (!recorded) throw std::logic_error("ball: cross edge found, not a tree");
        continue;
      }
      seen_edges.emplace(ekey, true);
      out.edges.push_back({std::move(ekey), e, at, idx});
      queue.push_back(idx);
    }
  }
  return out;
}

template <class Sys>
std::string ball_to_dot(const Sys& sys, const Ball<Sys>& b) {
  auto shorten = [](std::string s) {
    if (s.size() > 24) s = s.substr(0, 21) + "...";
    return s;
  };
  std::string dot = "graph ball {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < b.vertices.size(); ++i) {
    const auto& v = b.vertices[i];
    std::string label = (v.vertex.side == FactorTag::base ? "M | " : "M_i | ");
    label += shorten(word_str(sys, reduce(sys, v.vertex.rep)));
    dot += "  v" + std::to_string(i) + " [label=\"" + label + "\"];\n";
  }
  for (const auto& e : b.edges) {
    std::string w = shorten(word_str(sys, reduce(sys, e.edge.rep)));
    dot += "  v" + std::to_string(e.from) + " -- v" + std::to_string(e.to) +
           " [label=\"St = " + w + " G " + w + "^-1\"];\n";
  }
  dot += "}\n";
  return dot;
}

}  // namespace treefold
