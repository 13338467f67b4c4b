#pragma once

#include <random>

#include "treefold/check_report.hpp"
#include "treefold/finite_group.hpp"
#include "treefold/word.hpp"

namespace treefold {

// (P1): a_i centralizes G_{i-1} in M.  Exhaustive on enumerable systems,
// sampled otherwise; FAIL carries the non-commuting witness.
template <class Sys>
CheckReport check_p1(const Sys& sys, int i, int samples, std::uint64_t seed) {
  CheckReport rep;
  rep.check = "P1";
  rep.params = {{"system", sys.name()}, {"i", i}};
  rep.seed = seed;
  if (i < 1 || i > sys.depth()) {
    rep.note = "level out of range";
    return rep;
  }
  rep.status = CheckStatus::PASS;
  typename Sys::Elem a = sys.level_conjugator(i);
  auto check_one = [&](const typename Sys::Elem& g) {
    ++rep.samples;
    typename Sys::Elem conj = sys.mul(sys.mul(a, g), sys.inverse(a));
    if (!sys.equal(conj, g)) {
      rep.status = CheckStatus::FAIL;
      rep.witnesses.push_back({{"g", sys.elem_json(g)}, {"conjugate", sys.elem_json(conj)}});
      return false;
    }
    return true;
  };
  if constexpr (Sys::is_finite) {
    rep.note = "exhaustive over G_{i-1}";
    for (const auto& g : sys.level_elements(i - 1))
      if (!check_one(g)) return rep;
  } else {
    rep.note = "verified on sampled elements of G_{i-1}";
    std::mt19937_64 rng(seed);
    for (int n = 0; n < samples; ++n)
      if (!check_one(sys.sample_level(i - 1, rng))) return rep;
  }
  return rep;
}

// (P2): M = <G_i, G_i^{a_i}>.  Constructive generation witnesses where the
// system provides them, BFS closure on enumerable systems.
template <class Sys>
CheckReport check_p2(const Sys& sys, int i, std::uint64_t seed = 0) {
  CheckReport rep;
  rep.check = "P2";
  rep.params = {{"system", sys.name()}, {"i", i}};
  rep.seed = seed;
  if (i < 1 || i > sys.depth()) {
    rep.note = "level out of range";
    return rep;
  }
  if constexpr (requires { sys.generation_witness(i); }) {
    auto witness = sys.generation_witness(i);
    rep.samples = 4;
    rep.note = "witnessed: generator words over G_i and G_i^{a_i}";
    if (verify_generation_witness(witness)) {
      rep.status = CheckStatus::PASS;
    } else {
      rep.status = CheckStatus::FAIL;
      rep.witnesses.push_back({{"reason", "witness verification failed"}});
    }
  } else if constexpr (Sys::is_finite) {
    typename Sys::Elem a = sys.level_conjugator(i);
    std::vector<typename Sys::Elem> gens;
    for (const auto& g : sys.level_generators(i)) {
      gens.push_back(g);
      gens.push_back(sys.mul(sys.mul(a, g), sys.inverse(a)));
    }
    FiniteGroup<typename Sys::Elem> closure(sys.identity(), gens);
    std::size_t got = closure.order();
    std::size_t want = sys.elements().size();
    rep.samples = static_cast<long>(got);
    rep.note = "BFS closure of G_i and G_i^{a_i}";
    if (got == want) {
      rep.status = CheckStatus::PASS;
    } else {
      rep.status = CheckStatus::FAIL;
      rep.witnesses.push_back({{"closure_order", got}, {"group_order", want}});
    }
  } else {
    rep.note = "no witness scheme and not enumerable";
  }
  return rep;
}

// (P4) search: looks for c in G_i \ G_{i-1} with a_i c a_i^{-1} in G_n for
// some n >= i, which forces <G_i, G_i^{a_i c a_i^{-1}}> into G_n.  FAIL(P4)
// with a verified witness when found; INCONCLUSIVE otherwise ((P4) is only
// refutable by search, never confirmable).
template <class Sys>
CheckReport check_p4_search(const Sys& sys, int i, int budget, std::uint64_t seed) {
  CheckReport rep;
  rep.check = "P4-search";
  rep.params = {{"system", sys.name()}, {"i", i}};
  rep.seed = seed;
  if (i < 1 || i + 1 > sys.depth()) {
    rep.note = "no level i+1 exists at this depth";
    return rep;
  }
  typename Sys::Elem a = sys.level_conjugator(i);
  const int n_max = std::min(sys.depth(), i + 3);

  auto violates = [&](const typename Sys::Elem& c) -> int {
    if (!sys.in_level(c, i) || (i >= 1 && sys.in_level(c, i - 1))) return -1;
    typename Sys::Elem d = sys.mul(sys.mul(a, c), sys.inverse(a));
    for (int n = i; n <= n_max; ++n)
      if (sys.in_level(d, n)) return n;
    return -1;
  };

  auto record = [&](const typename Sys::Elem& c, int n) {
    typename Sys::Elem d = sys.mul(sys.mul(a, c), sys.inverse(a));
    rep.status = CheckStatus::FAIL;
    rep.note = "(P4) violated: <G_i, G_i^{a_i c a_i^{-1}}> is contained in G_" +
               std::to_string(n);
    rep.witnesses.push_back({{"c", sys.elem_json(c)},
                             {"conjugate", sys.elem_json(d)},
                             {"containment_level", n}});
  };

  if constexpr (requires { sys.p4_seed(i); }) {
    typename Sys::Elem c = sys.p4_seed(i);
    ++rep.samples;
    if (int n = violates(c); n >= 0) {
      record(c, n);
      return rep;
    }
  }
  std::mt19937_64 rng(seed);
  for (int k = 0; k < budget; ++k) {
    typename Sys::Elem c = sys.sample_level(i, rng, /*proper=*/true);
    ++rep.samples;
    if (int n = violates(c); n >= 0) {
      record(c, n);
      return rep;
    }
  }
  rep.status = CheckStatus::INCONCLUSIVE;
  rep.note = "budget exhausted without a (P4) violation";
  return rep;
}

}  // namespace treefold
