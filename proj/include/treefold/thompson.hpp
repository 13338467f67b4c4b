#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "treefold/velement.hpp"

namespace treefold {
namespace thompson {

// The four standard generators of V and the level swaps a_i.
VElement gen_a();
VElement gen_b();
VElement gen_c();
VElement gen_pi0();
VElement level_swap(int i);  // a_i: swaps [0,1/2^{i+1}) and [1/2^{i+1},1/2^i), i >= 1

VElement generator(const std::string& name);  // "A","B","C","pi0"

// [0, 1/2^{i+1}), the interval whose pointwise stabilizer is G_i.
DyadicInterval level_interval(int i);
// [1/2^{i+1}, 1/2^i), the interval stabilized by G_i^{a_i}.
DyadicInterval swapped_level_interval(int i);

// g in G_i = St_V([0, 1/2^{i+1})), decided exactly from the table.
bool in_level(const VElement& g, int i);

// The element that exchanges the two halves of [lo, hi).
VElement swap_halves(const DyadicInterval& iv);

// Deterministic f in V with f(from) = to affinely and f fixing `fix`
// pointwise.  The complement is matched by a canonical greedy subdivision
// into standard dyadic pieces; throws when no such element exists.
VElement transporter(const DyadicInterval& from, const DyadicInterval& to,
                     const std::vector<DyadicInterval>& fix);

// Injective homomorphism V -> G_i that rescales the action onto
// [1/2^{i+1}, 1): the level-i sampler and the source of G_i \ G_{i-1}
// witnesses.
VElement embed_in_level(const VElement& f, int i);

// Tag of one letter in a generation witness word.
enum class WitnessTag { level, level_conjugate };  // G_i vs G_i^{a_i}

struct WitnessLetter {
  WitnessTag tag;
  VElement g;
};

// For each generator of V, a word over G_i and G_i^{a_i} letters whose
// product is that generator exactly; realizes M = <G_i, G_i^{a_i}>.
struct GenerationWitness {
  int level = 0;
  std::vector<WitnessLetter> a, b, c, pi0;
};

GenerationWitness generation_witness(int i);

// Verifies letter memberships and the four exact products.
bool verify_generation_witness(const GenerationWitness& w);

// The property-(P4) failure of V: c in G_i \ G_{i-1} whose a_i-conjugate
// lands back in G_{i+1}.  c swaps the halves of [3/2^{i+2}, 4/2^{i+2}).
struct P4Counterexample {
  int level = 0;
  VElement c;
  VElement conjugate;    // a_i c a_i^{-1}
  int containment_level; // i+1: conjugate lies in G_{i+1}
};

P4Counterexample p4_counterexample(int i);
bool verify_p4_counterexample(const P4Counterexample& w);

// Deterministic pseudo-random product of the generators A,B,C,pi0 of word
// length <= depth.
VElement random_element(std::uint64_t seed, int depth);
VElement random_element(std::mt19937_64& rng, int depth);
// Random element of G_i (resp. of G_i \ G_{i-1} when proper=true).
VElement random_level_element(std::mt19937_64& rng, int i, int depth, bool proper = false);

}  // namespace thompson
}  // namespace treefold
