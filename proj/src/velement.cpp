#include "treefold/velement.hpp"

#include <algorithm>
#include <stdexcept>

namespace treefold {

Dyadic AffinePiece::apply(const Dyadic& x) const {
  return dst.lo + (x - src.lo).mul_pow2(slope_exp);
}

Dyadic AffinePiece::apply_inverse(const Dyadic& y) const {
  return src.lo + (y - dst.lo).mul_pow2(-slope_exp);
}

AffinePiece make_piece(const DyadicInterval& src, const DyadicInterval& dst) {
  Dyadic ls = src.length();
  Dyadic ld = dst.length();
  // Canonical dyadics have odd numerators, so the ratio is a power of two
  // exactly when the numerators agree.
  if (ls.num() != ld.num())
    throw std::invalid_argument("make_piece: length ratio is not a power of two");
  return AffinePiece{src, dst, ls.exp() - ld.exp()};
}

namespace {

std::vector<AffinePiece> canonicalize(std::vector<AffinePiece> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const AffinePiece& a, const AffinePiece& b) {
    return a.src.lo < b.src.lo;
  });
  std::vector<AffinePiece> out;
  for (const AffinePiece& p : pieces) {
    if (!out.empty()) {
      AffinePiece& q = out.back();
      if (q.src.hi == p.src.lo && q.dst.hi == p.dst.lo && q.slope_exp == p.slope_exp) {
        q.src.hi = p.src.hi;
        q.dst.hi = p.dst.hi;
        continue;
      }
      if (p.src.lo < q.src.hi) throw std::invalid_argument("PLMap: overlapping sources");
    }
    out.push_back(p);
  }
  // Destinations must be pairwise disjoint as well.
  std::vector<DyadicInterval> dsts;
  dsts.reserve(out.size());
  for (const AffinePiece& p : out) dsts.push_back(p.dst);
  std::sort(dsts.begin(), dsts.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < dsts.size(); ++i)
    if (dsts[i].lo < dsts[i - 1].hi) throw std::invalid_argument("PLMap: overlapping destinations");
  return out;
}

}  // namespace

PLMap::PLMap(std::vector<AffinePiece> pieces) : pieces_(canonicalize(std::move(pieces))) {}

PLMap PLMap::identity_on(const DyadicInterval& iv) { return PLMap({AffinePiece{iv, iv, 0}}); }

bool PLMap::defined_at(const Dyadic& x) const {
  for (const AffinePiece& p : pieces_)
    if (p.src.contains(x)) return true;
  return false;
}

Dyadic PLMap::apply(const Dyadic& x) const {
  for (const AffinePiece& p : pieces_)
    if (p.src.contains(x)) return p.apply(x);
  throw std::domain_error("PLMap: point outside domain");
}

PLMap PLMap::inverse() const {
  std::vector<AffinePiece> inv;
  inv.reserve(pieces_.size());
  for (const AffinePiece& p : pieces_) inv.push_back(AffinePiece{p.dst, p.src, -p.slope_exp});
  return PLMap(std::move(inv));
}

PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<AffinePiece> out;
  for (const AffinePiece& pg : g.pieces()) {
    for (const AffinePiece& pf : f.pieces()) {
      auto mid = intersect(pg.dst, pf.src);
      if (!mid) continue;
      DyadicInterval src(pg.apply_inverse(mid->lo), pg.apply_inverse(mid->hi));
      DyadicInterval dst(pf.apply(mid->lo), pf.apply(mid->hi));
      out.push_back(AffinePiece{src, dst, pg.slope_exp + pf.slope_exp});
    }
  }
  return PLMap(std::move(out));
}

namespace {

void check_partition(std::vector<DyadicInterval> ivs, const char* what) {
  std::sort(ivs.begin(), ivs.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
  if (ivs.empty() || !ivs.front().lo.is_zero() || ivs.back().hi != Dyadic::one())
    throw std::invalid_argument(std::string("VElement: ") + what + " do not cover [0,1)");
  for (std::size_t i = 1; i < ivs.size(); ++i)
    if (ivs[i].lo != ivs[i - 1].hi)
      throw std::invalid_argument(std::string("VElement: gap in ") + what);
}

}  // namespace

VElement::VElement(PLMap table) : map_(std::move(table)) {
  std::vector<DyadicInterval> srcs, dsts;
  for (const AffinePiece& p : map_.pieces()) {
    srcs.push_back(p.src);
    dsts.push_back(p.dst);
  }
  check_partition(std::move(srcs), "sources");
  check_partition(std::move(dsts), "destinations");
}

const VElement& VElement::identity() {
  static const VElement id(PLMap::identity_on(DyadicInterval::unit()));
  return id;
}

Dyadic VElement::operator()(const Dyadic& x) const {
  if (x.is_negative() || !(x < Dyadic::one()))
    throw std::domain_error("VElement: argument outside [0,1)");
  return map_.apply(x);
}

VElement VElement::inverse() const { return VElement(map_.inverse()); }

bool VElement::is_identity() const {
  return pairs().size() == 1 && pairs()[0].slope_exp == 0;
}

bool VElement::fixes_pointwise(const DyadicInterval& iv) const {
  for (const AffinePiece& p : pairs()) {
    if (!intersect(p.src, iv)) continue;
    if (p.slope_exp != 0 || p.src.lo != p.dst.lo) return false;
  }
  return true;
}

VElement compose(const VElement& f, const VElement& g) {
  return VElement(compose(f.table(), g.table()));
}

VElement conjugate(const VElement& g, const VElement& by) {
  return compose(by, compose(g, by.inverse()));
}

std::string VElement::str() const {
  std::string s;
  for (const AffinePiece& p : pairs()) {
    if (!s.empty()) s += ", ";
    s += p.src.str() + "->" + p.dst.str();
  }
  return "{" + s + "}";
}

nlohmann::json VElement::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const AffinePiece& p : pairs())
    arr.push_back({{"src", p.src.to_json()}, {"dst", p.dst.to_json()}});
  return nlohmann::json{{"pairs", arr}};
}

VElement VElement::from_json(const nlohmann::json& j) {
  std::vector<AffinePiece> pieces;
  for (const auto& e : j.at("pairs"))
    pieces.push_back(make_piece(DyadicInterval::from_json(e.at("src")),
                                DyadicInterval::from_json(e.at("dst"))));
  return VElement(PLMap(std::move(pieces)));
}

}  // namespace treefold
