#pragma once

#include <string>
#include <utility>
#include <vector>

#include "treefold/word.hpp"

namespace treefold {

// Transversal normal form w = r_1 r_2 ... r_n * c of an amalgam word over an
// enumerable system: the r_j are non-identity left-coset representatives of
// the edge subgroup, tags alternate, and c lies in the edge subgroup.  The
// expression is unique for a fixed transversal, which makes it an oracle for
// identity/equality that shares no code with reduce(): it only walks the
// coset graph (representative lookups) and multiplies group elements.
template <class Sys>
struct CosetNormalForm {
  std::vector<std::pair<FactorTag, typename Sys::Elem>> reps;
  typename Sys::Elem tail;

  bool is_identity(const Sys& sys) const { return reps.empty() && sys.is_identity(tail); }

  std::string key() const {
    std::string k;
    for (const auto& [tag, r] : reps) {
      k.push_back(tag == FactorTag::base ? 'M' : 'C');
      k += r.key();
      k.push_back('|');
    }
    return k;
  }
};

template <class Sys>
CosetNormalForm<Sys> coset_normal_form(const Sys& sys, const GroupWord<Sys>& w) {
  static_assert(Sys::is_finite, "coset normal form needs an enumerable system");
  using Elem = typename Sys::Elem;
  const int edge = w.stage - 1;

  std::vector<std::pair<FactorTag, Elem>> syls;
  for (const auto& s : w.syls) {
    if (s.is_stable())
      throw std::invalid_argument("coset_normal_form: amalgam words only");
    syls.emplace_back(s.tag, s.payload);
  }
  Elem tail = sys.identity();

  while (true) {
    // Fuse adjacent same-tag syllables and drop identities (plain group
    // multiplication, no edge-subgroup decisions).
    std::vector<std::pair<FactorTag, Elem>> fused;
    for (auto& [tag, g] : syls) {
      if (sys.is_identity(g)) continue;
      if (!fused.empty() && fused.back().first == tag) {
        fused.back().second = sys.mul(fused.back().second, g);
        if (sys.is_identity(fused.back().second)) fused.pop_back();
        continue;
      }
      fused.emplace_back(tag, std::move(g));
    }

    // Left-to-right carry sweep: x_j = c_j * s_j = r_j * c_{j+1}.
    std::vector<std::pair<FactorTag, Elem>> reps;
    Elem carry = sys.identity();
    for (auto& [tag, g] : fused) {
      Elem x = sys.mul(carry, g);
      Elem r = sys.coset_rep(x, edge);
      carry = sys.mul(sys.inverse(r), x);
      reps.emplace_back(tag, std::move(r));
    }
    tail = sys.mul(carry, tail);

    std::vector<std::pair<FactorTag, Elem>> kept;
    for (auto& e : reps)
      if (!sys.is_identity(e.second)) kept.push_back(std::move(e));

    bool alternating = true;
    for (std::size_t j = 1; j < kept.size(); ++j)
      if (kept[j].first == kept[j - 1].first) alternating = false;

    if (alternating) return CosetNormalForm<Sys>{std::move(kept), std::move(tail)};

    // Identity representatives exposed same-tag neighbours; renormalize.
    syls = std::move(kept);
    syls.emplace_back(FactorTag::base, std::exchange(tail, sys.identity()));
  }
}

// Oracle counterparts of is_identity / equal / in_factor.
template <class Sys>
bool oracle_is_identity(const Sys& sys, const GroupWord<Sys>& w) {
  return coset_normal_form(sys, w).is_identity(sys);
}

template <class Sys>
bool oracle_equal(const Sys& sys, const GroupWord<Sys>& u, const GroupWord<Sys>& w) {
  GroupWord<Sys> cat{u.stage, u.hnn, u.syls};
  GroupWord<Sys> winv = inverse(sys, w);
  cat.syls.insert(cat.syls.end(), winv.syls.begin(), winv.syls.end());
  return oracle_is_identity(sys, cat);
}

template <class Sys>
bool oracle_in_factor(const Sys& sys, const GroupWord<Sys>& w, FactorTag tag) {
  CosetNormalForm<Sys> nf = coset_normal_form(sys, w);
  if (nf.reps.empty()) return true;
  return nf.reps.size() == 1 && nf.reps[0].first == tag;
}

// Canonical keys for vertex and edge cosets; two descriptors name the same
// vertex/edge of the Bass-Serre tree exactly when the keys agree.
template <class Sys>
std::string vertex_coset_key(const Sys& sys, const GroupWord<Sys>& rep, FactorTag side) {
  CosetNormalForm<Sys> nf = coset_normal_form(sys, rep);
  if (!nf.reps.empty() && nf.reps.back().first == side) nf.reps.pop_back();
  return (side == FactorTag::base ? "v0:" : "v1:") + nf.key();
}

template <class Sys>
std::string edge_coset_key(const Sys& sys, const GroupWord<Sys>& rep) {
  return "e:" + coset_normal_form(sys, rep).key();
}

}  // namespace treefold
