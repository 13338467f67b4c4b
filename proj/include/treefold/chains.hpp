#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "treefold/check_report.hpp"
#include "treefold/finite_group.hpp"
#include "treefold/matrix.hpp"
#include "treefold/perm.hpp"

namespace treefold {

// A strictly ascending chain G_0 < G_1 < ... of finite groups with explicit
// embeddings, the raw material for condition (5.1) checks.  G_0 is trivial.
template <class Elem>
struct Chain {
  std::string name;
  // level(i) lives in its own degree/dimension; embed(g, i) maps a level-i
  // element into the level-(i+1) realization.
  std::function<FiniteGroup<Elem>(int)> level;
  std::function<Elem(const Elem&, int)> embed;
  int max_level = 0;
};

Chain<Perm> alt_chain(int max_level = 3);              // G_i = Alt(i+4)
Chain<UTMatrix> ut_chain(int p = 2, int max_level = 3);  // G_i = UT(i+2, F_p)
Chain<Perm> c2_in_c4_chain();                          // negative control

// Condition (5.1): no nontrivial g in G_{i-1} has its normal closure in G_i
// contained in G_{i-1}.  FAIL carries the offending g.
template <class Elem>
CheckReport condition51(const Chain<Elem>& chain, int i) {
  CheckReport rep;
  rep.check = "condition51";
  rep.params = {{"chain", chain.name}, {"i", i}};
  if (i < 1 || i > chain.max_level) {
    rep.note = "level out of range";
    return rep;
  }
  FiniteGroup<Elem> upper = chain.level(i);
  FiniteGroup<Elem> lower = chain.level(i - 1);

  std::unordered_set<std::string> lower_keys;
  for (const Elem& g : lower.elements()) lower_keys.insert(chain.embed(g, i - 1).key());

  rep.status = CheckStatus::PASS;
  for (const Elem& g0 : lower.elements()) {
    if (g0.is_identity()) continue;
    Elem g = chain.embed(g0, i - 1);
    bool escaped = false;
    normal_closure_visit<Elem>({g}, upper, [&](const Elem& h) {
      if (!lower_keys.count(h.key())) {
        escaped = true;
        return false;  // closure already leaves G_{i-1}; g is fine
      }
      return true;
    });
    ++rep.samples;
    if (!escaped) {
      rep.status = CheckStatus::FAIL;
      rep.witnesses.push_back(
          {{"g", g.to_json()}, {"note", "normal closure of g in G_i stays inside G_{i-1}"}});
      return rep;
    }
  }
  return rep;
}

}  // namespace treefold
