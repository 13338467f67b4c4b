#pragma once

#include <optional>
#include <vector>

#include "json.hpp"
#include "treefold/dyadic.hpp"

namespace treefold {

// Half-open interval [lo, hi) with dyadic endpoints, contained in [0, 1].
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  DyadicInterval() = default;
  DyadicInterval(Dyadic lo_, Dyadic hi_);

  static DyadicInterval unit() { return DyadicInterval(Dyadic::zero(), Dyadic::one()); }

  Dyadic length() const { return hi - lo; }
  bool contains(const Dyadic& x) const { return lo <= x && x < hi; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

  std::string str() const;

  nlohmann::json to_json() const;  // {"lo":[n,k],"hi":[n,k]}
  static DyadicInterval from_json(const nlohmann::json& j);
};

std::optional<DyadicInterval> intersect(const DyadicInterval& a, const DyadicInterval& b);

bool disjoint(const DyadicInterval& a, const DyadicInterval& b);

// Greedy left-to-right decomposition into standard dyadic intervals
// [k/2^n, (k+1)/2^n).  Deterministic; used by the transporter construction.
std::vector<DyadicInterval> standard_pieces(const DyadicInterval& iv);

}  // namespace treefold
