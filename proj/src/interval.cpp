#include "treefold/interval.hpp"

#include <stdexcept>

namespace treefold {

DyadicInterval::DyadicInterval(Dyadic lo_, Dyadic hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) throw std::invalid_argument("DyadicInterval: requires lo < hi");
  if (lo.is_negative() || Dyadic::one() < hi)
    throw std::invalid_argument("DyadicInterval: must lie in [0,1]");
}

std::string DyadicInterval::str() const { return "[" + lo.str() + ", " + hi.str() + ")"; }

nlohmann::json DyadicInterval::to_json() const {
  return nlohmann::json{{"lo", lo.to_json()}, {"hi", hi.to_json()}};
}

DyadicInterval DyadicInterval::from_json(const nlohmann::json& j) {
  return DyadicInterval(Dyadic::from_json(j.at("lo")), Dyadic::from_json(j.at("hi")));
}

std::optional<DyadicInterval> intersect(const DyadicInterval& a, const DyadicInterval& b) {
  Dyadic lo = max(a.lo, b.lo);
  Dyadic hi = min(a.hi, b.hi);
  if (!(lo < hi)) return std::nullopt;
  return DyadicInterval(lo, hi);
}

bool disjoint(const DyadicInterval& a, const DyadicInterval& b) {
  return !intersect(a, b).has_value();
}

std::vector<DyadicInterval> standard_pieces(const DyadicInterval& iv) {
  std::vector<DyadicInterval> out;
  Dyadic at = iv.lo;
  while (at < iv.hi) {
    // Largest standard interval starting at `at` that fits in [at, hi).
    int k = at.exp();
    while (iv.hi < at + Dyadic::pow2(-k)) ++k;
    Dyadic next = at + Dyadic::pow2(-k);
    out.emplace_back(at, next);
    at = next;
  }
  return out;
}

}  // namespace treefold
