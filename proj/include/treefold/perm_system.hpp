#pragma once

#include <map>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "treefold/perm.hpp"

namespace treefold {

// Finite truncated P-system: M = Sym(degree) with the chain
// G_i = Sym(level_degrees[i]) (the pointwise stabilizer of the tail points)
// and explicit conjugators a_i.  Fully enumerable; serves as the brute-force
// oracle system for the word, tree and fold engines.
class PermSystem {
 public:
  using Elem = Perm;
  static constexpr bool is_finite = true;

  PermSystem(std::string name, int degree, std::vector<int> level_degrees,
             std::vector<Perm> conjugators);

  // M = Sym(6) > G_1 = Sym(5) > G_0 = Sym(4), a_1 = (5 6): a_1 centralizes
  // G_0 and <G_1, G_1^{a_1}> = M.
  static PermSystem sym6();
  // Negative control: M = Sym(7) with the same chain; (P2) fails at i = 1.
  static PermSystem sym7_bad();
  // Base for the Britton demo: Sym(5) *_{Sym(4)} Sym(5)' with a stable
  // letter centralizing Sym(4); G_1 = Sym(5) = M.
  static PermSystem sym5_hnn_base();

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  int depth() const { return static_cast<int>(level_degrees_.size()) - 1; }

  Elem identity() const { return Perm(degree_); }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inverse(const Elem& a) const { return a.inverse(); }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }
  bool is_identity(const Elem& a) const { return a.is_identity(); }

  bool in_level(const Elem& g, int i) const;
  Elem level_conjugator(int i) const;

  Elem sample(std::mt19937_64& rng) const;
  Elem sample_level(int i, std::mt19937_64& rng, bool proper = false) const;

  std::string elem_str(const Elem& g) const { return g.str(); }
  nlohmann::json elem_json(const Elem& g) const { return g.to_json(); }

  // Enumeration / transversal surface (the finite capabilities).
  const std::vector<Perm>& elements() const;
  std::vector<Perm> level_elements(int i) const;
  std::vector<Perm> level_generators(int i) const;
  std::vector<Perm> generators() const;

  // Left-coset representatives of G_i in M; the representative of G_i itself
  // is the identity, and representatives are lexicographically minimal.
  const std::vector<Perm>& transversal(int i) const;
  const Perm& coset_rep(const Perm& g, int i) const;

 private:
  std::string coset_key(const Perm& g, int i) const;

  std::string name_;
  int degree_;
  std::vector<int> level_degrees_;
  std::vector<Perm> conjugators_;  // conjugators_[i-1] = a_i

  // Filled once at construction; the handle is immutable afterwards.
  std::vector<Perm> elements_;
  std::vector<std::vector<Perm>> transversals_;
  std::vector<std::map<std::string, Perm>> rep_by_key_;
};

}  // namespace treefold
