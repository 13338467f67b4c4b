#pragma once

#include <map>

#include "treefold/fold.hpp"
#include "treefold/tree.hpp"

namespace treefold {

// The limit tree is never materialized: it is probed through stabilized
// distances of stage-1 representatives pushed along the fold morphisms.

enum class ProbeStatus { STABILIZED, HEURISTIC, EXHAUSTED };

inline std::string to_string(ProbeStatus s) {
  switch (s) {
    case ProbeStatus::STABILIZED: return "STABILIZED";
    case ProbeStatus::HEURISTIC: return "HEURISTIC";
    case ProbeStatus::EXHAUSTED: return "EXHAUSTED";
  }
  return "?";
}

struct ProbeResult {
  Dyadic value;
  int first_stable = 0;           // stage from which the value was observed constant
  int examined = 0;               // last stage examined
  ProbeStatus status = ProbeStatus::EXHAUSTED;
  std::vector<Dyadic> values;     // d_j for j = 1..examined

  nlohmann::json to_json() const {
    nlohmann::json vals = nlohmann::json::array();
    for (const Dyadic& v : values) vals.push_back(v.to_json());
    return nlohmann::json{{"value", value.to_json()},
                          {"first_stable", first_stable},
                          {"examined", examined},
                          {"status", to_string(status)},
                          {"values", vals}};
  }
};

// Pushes two stage-1 points through the morphisms and reports the distance
// stabilization.  STABILIZED is proof-backed: either the points share an edge
// (single-edge isometry) or every pair of edges under the geodesic has
// provably spent its fold budget of four.  Otherwise `window` consecutive
// equal values give HEURISTIC.
template <class Sys>
ProbeResult limit_distance(const Sys& sys, const TreePoint<Sys>& x, const TreePoint<Sys>& y,
                           int j_max, int window = 3) {
  if (x.edge.stage != 1 || y.edge.stage != 1)
    throw std::invalid_argument("limit_distance: stage-1 representatives required");
  if (j_max < 2) throw std::invalid_argument("limit_distance: j_max >= 2 required");
  j_max = std::min(j_max, sys.depth() + 1);

  ProbeResult out;

  // Proof-backed cases first.
  if (point_equal(sys, x, y)) {
    out.value = Dyadic::zero();
    out.first_stable = 1;
    out.examined = 1;
    out.status = ProbeStatus::STABILIZED;
    out.values = {Dyadic::zero()};
    return out;
  }
  bool same_edge = edge_equal(sys, x.edge, y.edge);

  PointGeodesic<Sys> geo = geodesic(sys, x, y);
  std::vector<TreeEdge<Sys>> path_edges = geo.full_edges;
  auto add_edge = [&](const TreeEdge<Sys>& e) {
    for (const auto& f : path_edges)
      if (edge_equal(sys, e, f)) return;
    path_edges.push_back(e);
  };
  add_edge(x.edge);
  add_edge(y.edge);

  TreePoint<Sys> px = x, py = y;
  for (int j = 1; j <= j_max; ++j) {
    if (j > 1) {
      px = fold_point(sys, px);
      py = fold_point(sys, py);
    }
    out.values.push_back(distance(sys, px, py));
    out.examined = j;

    if (same_edge) break;  // aux-2: the value can never change

    // Heuristic window.
    int run = 1;
    while (run < static_cast<int>(out.values.size()) &&
           out.values[out.values.size() - 1 - run] == out.values.back())
      ++run;
    if (run >= window) break;
  }

  out.value = out.values.back();
  int run = 1;
  while (run < static_cast<int>(out.values.size()) &&
         out.values[out.values.size() - 1 - run] == out.values.back())
    ++run;
  out.first_stable = out.examined - run + 1;

  if (same_edge) {
    out.first_stable = 1;
    out.status = ProbeStatus::STABILIZED;
    return out;
  }

  // Spent fold budget: every pair of path edges folded four times already.
  if (path_edges.size() >= 2) {
    bool all_spent = true;
    int last_growth = 1;
    for (std::size_t a = 0; a < path_edges.size() && all_spent; ++a)
      for (std::size_t b = a + 1; b < path_edges.size() && all_spent; ++b) {
        std::vector<int> stages = fold_growth_stages(sys, path_edges[a], path_edges[b], out.examined);
        if (stages.size() < 4)
          all_spent = false;
        else
          last_growth = std::max(last_growth, stages.back());
      }
    if (all_spent && last_growth <= out.first_stable) {
      out.status = ProbeStatus::STABILIZED;
      return out;
    }
  }

  if (out.examined - out.first_stable + 1 >= window)
    out.status = ProbeStatus::HEURISTIC;
  else
    out.status = ProbeStatus::EXHAUSTED;
  return out;
}

struct LimitEqualResult {
  bool equal = false;
  int stage = 0;  // stage of equality, or the last stage examined

  std::string str() const {
    return equal ? "EqualByStage(" + std::to_string(stage) + ")"
                 : "UnknownAfter(" + std::to_string(stage) + ")";
  }
};

// Sound semi-decision of equality in the limit group: equal at some stage k
// implies equal in L; inequality is never asserted.
template <class Sys>
LimitEqualResult limit_equal(const Sys& sys, const GroupWord<Sys>& g, const GroupWord<Sys>& h,
                             int j_max) {
  if (g.hnn || h.hnn) throw std::invalid_argument("limit_equal: amalgam words only");
  j_max = std::min(j_max, sys.depth() + 1);
  int start = std::max(g.stage, h.stage);
  GroupWord<Sys> u = fold_word_to(sys, g, start);
  GroupWord<Sys> w = fold_word_to(sys, h, start);
  for (int k = start; k <= j_max; ++k) {
    if (k > start) {
      u = fold_word(sys, u);
      w = fold_word(sys, w);
    }
    if (equal(sys, u, w)) return LimitEqualResult{true, k};
  }
  return LimitEqualResult{false, j_max};
}

// Witness for an arc stabilizer in the limit tree: a stage m, an edge of T_m
// inside the image geodesic, and its conjugator; the stabilizer is the
// conjugate of G_{m-1} attached to that edge coset.
template <class Sys>
struct ArcStabilizer {
  int m = 0;
  TreeEdge<Sys> witness;
  GroupWord<Sys> conjugator;  // witness = conjugator * G_{m-1}
  ProbeResult probe;
};

template <class Sys>
bool arc_stabilizer_contains(const Sys& sys, const ArcStabilizer<Sys>& st,
                             const GroupWord<Sys>& g) {
  return edge_stabilizer_contains(sys, st.witness, g);
}

template <class Sys>
ArcStabilizer<Sys> arc_stabilizer(const Sys& sys, const TreePoint<Sys>& x, const TreePoint<Sys>& y,
                                  int j_max, int window = 3) {
  ProbeResult probe = limit_distance(sys, x, y, j_max, window);
  if (probe.value.is_zero())
    throw std::invalid_argument("arc_stabilizer: degenerate arc (distance 0)");
  if (probe.status == ProbeStatus::EXHAUSTED)
    throw std::runtime_error("arc_stabilizer: probe did not stabilize");

  int cap = std::min(j_max, sys.depth() + 1);
  for (int m = probe.first_stable; m <= cap; ++m) {
    TreePoint<Sys> xm = fold_point_to(sys, x, m);
    TreePoint<Sys> ym = fold_point_to(sys, y, m);
    PointGeodesic<Sys> geo = geodesic(sys, xm, ym);
    if (!geo.full_edges.empty()) {
      ArcStabilizer<Sys> out;
      out.m = m;
      out.witness = geo.full_edges.front();
      out.conjugator = out.witness.rep;
      out.probe = std::move(probe);
      return out;
    }
  }
  throw std::runtime_error("arc_stabilizer: no full edge in the geodesic up to j_max");
}

}  // namespace treefold
