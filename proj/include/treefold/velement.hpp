#pragma once

#include <vector>

#include "json.hpp"
#include "treefold/interval.hpp"

namespace treefold {

// One affine piece x |-> dst.lo + (x - src.lo) * 2^slope_exp, defined on src.
// Orientation preserving; length(dst) = length(src) * 2^slope_exp.
struct AffinePiece {
  DyadicInterval src;
  DyadicInterval dst;
  int slope_exp = 0;

  Dyadic apply(const Dyadic& x) const;
  Dyadic apply_inverse(const Dyadic& y) const;

  friend bool operator==(const AffinePiece&, const AffinePiece&) = default;
};

// Builds the affine piece mapping src onto dst; throws unless the length
// ratio is a power of two.
AffinePiece make_piece(const DyadicInterval& src, const DyadicInterval& dst);

// A partial piecewise-affine map: finitely many affine pieces with pairwise
// disjoint sources and pairwise disjoint destinations, kept sorted by src.lo
// and merged into canonical form (no two consecutive pieces are joinable).
class PLMap {
 public:
  PLMap() = default;
  explicit PLMap(std::vector<AffinePiece> pieces);

  static PLMap identity_on(const DyadicInterval& iv);

  const std::vector<AffinePiece>& pieces() const { return pieces_; }
  bool empty() const { return pieces_.empty(); }

  bool defined_at(const Dyadic& x) const;
  Dyadic apply(const Dyadic& x) const;

  PLMap inverse() const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

 private:
  std::vector<AffinePiece> pieces_;
};

// f after g: x |-> f(g(x)), defined where both sides are.
PLMap compose(const PLMap& f, const PLMap& g);

// An element of Thompson's group V: a right-continuous piecewise-affine
// bijection of [0,1) whose pieces have dyadic endpoints and power-of-two
// slopes, stored as the canonical interval table.  Immutable; equality is
// identity of canonical tables.
class VElement {
 public:
  VElement() : VElement(identity()) {}
  explicit VElement(PLMap table);

  static const VElement& identity();

  const std::vector<AffinePiece>& pairs() const { return map_.pieces(); }
  const PLMap& table() const { return map_; }

  Dyadic operator()(const Dyadic& x) const;  // requires x in [0,1)

  VElement inverse() const;

  bool is_identity() const;
  // Exact: decided by breakpoint inspection of the table, never by sampling.
  bool fixes_pointwise(const DyadicInterval& iv) const;

  friend bool operator==(const VElement&, const VElement&) = default;

  std::string str() const;
  nlohmann::json to_json() const;  // {"pairs":[{"src":...,"dst":...},...]}
  static VElement from_json(const nlohmann::json& j);

 private:
  PLMap map_;
};

// x |-> f(g(x)).
VElement compose(const VElement& f, const VElement& g);
VElement conjugate(const VElement& g, const VElement& by);  // by * g * by^-1

}  // namespace treefold
