#pragma once

#include <random>
#include <string>

#include "json.hpp"
#include "treefold/thompson.hpp"
#include "treefold/velement.hpp"

namespace treefold {

// The P-system (M, {G_i}, {a_i}) with M = Thompson's group V,
// G_i = St_V([0,1/2^{i+1})) and a_i the level swap.  Level membership is
// decided exactly by breakpoint inspection; the chain is unbounded.
class VSystem {
 public:
  using Elem = VElement;
  static constexpr bool is_finite = false;

  VSystem() = default;

  // Negative control: replaces every a_i by the generator A, which does not
  // centralize G_{i-1}.
  static VSystem adversarial_p1();

  std::string name() const { return adversarial_ ? "thompson-adversarial" : "thompson"; }
  int depth() const { return 1 << 20; }  // unbounded for all practical purposes

  Elem identity() const { return VElement::identity(); }
  Elem mul(const Elem& a, const Elem& b) const { return compose(a, b); }
  Elem inverse(const Elem& a) const { return a.inverse(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_identity(const Elem& a) const { return a.is_identity(); }

  bool in_level(const Elem& g, int i) const { return thompson::in_level(g, i); }
  Elem level_conjugator(int i) const {
    return adversarial_ ? thompson::gen_a() : thompson::level_swap(i);
  }

  Elem sample(std::mt19937_64& rng) const { return thompson::random_element(rng, sample_depth_); }
  Elem sample_level(int i, std::mt19937_64& rng, bool proper = false) const {
    return thompson::random_level_element(rng, i, sample_depth_, proper);
  }

  std::string elem_str(const Elem& g) const { return g.str(); }
  nlohmann::json elem_json(const Elem& g) const { return g.to_json(); }

  // Constructive (P2) witnesses and the deterministic (P4) counterexample.
  thompson::GenerationWitness generation_witness(int i) const {
    return thompson::generation_witness(i);
  }
  Elem p4_seed(int i) const { return thompson::p4_counterexample(i).c; }

 private:
  bool adversarial_ = false;
  int sample_depth_ = 6;
};

inline VSystem VSystem::adversarial_p1() {
  VSystem s;
  s.adversarial_ = true;
  return s;
}

}  // namespace treefold
