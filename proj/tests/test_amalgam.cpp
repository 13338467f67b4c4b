#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "treefold/coset_normal_form.hpp"
#include "treefold/perm_system.hpp"
#include "treefold/thompson.hpp"
#include "treefold/vsystem.hpp"
#include "treefold/word.hpp"

using namespace treefold;
using testutil::random_word;
using testutil::randomized_reduce;
using testutil::same_syllables;

namespace {

using PW = GroupWord<PermSystem>;
using VW = GroupWord<VSystem>;

// Fixed 20-letter alphabet over Sym(6): ten payloads used with both tags,
// mixing edge-subgroup members with proper elements.
std::vector<PW> alphabet20(const PermSystem& sys) {
  std::vector<Perm> payloads = {
      Perm::cycle(6, {1, 2}),           // in G_0
      Perm::cycle(6, {1, 2, 3}),        // in G_0
      Perm::from_cycles(6, {{1, 2}, {3, 4}}),
      Perm::cycle(6, {4, 5}),           // in G_1 only
      Perm::cycle(6, {1, 2, 3, 4, 5}),  // in G_1 only
      Perm::cycle(6, {5, 6}),
      Perm::cycle(6, {4, 5, 6}),
      Perm::cycle(6, {1, 6}),
      Perm::cycle(6, {1, 2, 3, 4, 5, 6}),
      Perm::from_cycles(6, {{1, 2}, {5, 6}}),
  };
  std::vector<PW> letters;
  for (const Perm& p : payloads) {
    letters.push_back(PW::factor(1, FactorTag::base, p));
    letters.push_back(PW::factor(1, FactorTag::copy, p));
  }
  (void)sys;
  return letters;
}

PW concat(const std::vector<PW>& letters, const std::vector<int>& picks) {
  PW w = PW::one(1);
  for (int k : picks)
    w.syls.push_back(letters[static_cast<std::size_t>(k)].syls[0]);
  return w;
}

}  // namespace

TEST_SUITE("amalgam") {

TEST_CASE("defining identification reduces to the identity") {
  PermSystem sys = PermSystem::sym6();
  Perm g = Perm::cycle(6, {1, 2, 3});  // in G_0 = Sym(4)
  PW w = PW::one(1);
  w.syls.push_back(Syllable<Perm>::factor(FactorTag::base, g));
  w.syls.push_back(Syllable<Perm>::factor(FactorTag::copy, g.inverse()));
  CHECK(is_identity(sys, w));

  VSystem v;
  VElement b = thompson::gen_b();  // in G_0
  VW vw = VW::one(1);
  vw.syls.push_back(Syllable<VElement>::factor(FactorTag::base, b));
  vw.syls.push_back(Syllable<VElement>::factor(FactorTag::copy, b.inverse()));
  CHECK(is_identity(v, vw));
}

TEST_CASE("reduced length two when no identification applies") {
  PermSystem sys = PermSystem::sym6();
  Perm g = Perm::cycle(6, {5, 6});  // not in Sym(4)
  PW w = PW::one(1);
  w.syls.push_back(Syllable<Perm>::factor(FactorTag::base, g));
  w.syls.push_back(Syllable<Perm>::factor(FactorTag::copy, g));
  PW r = reduce(sys, w);
  CHECK(r.syls.size() == 2);
  CHECK(!is_identity(sys, w));
  CHECK(!oracle_is_identity(sys, w));  // BFS-side agreement
}

TEST_CASE("in_factor against the normal-form oracle") {
  PermSystem sys = PermSystem::sym6();
  Perm n = Perm::cycle(6, {5, 6});  // not in G_0
  Perm m = Perm::cycle(6, {4, 6});
  PW w = PW::one(1);
  w.syls.push_back(Syllable<Perm>::factor(FactorTag::copy, n));
  w.syls.push_back(Syllable<Perm>::factor(FactorTag::base, m));
  CHECK(!in_factor(sys, w, FactorTag::base));
  CHECK(!in_factor(sys, w, FactorTag::copy));
  CHECK(!oracle_in_factor(sys, w, FactorTag::base));

  std::mt19937_64 rng(31);
  for (int k = 0; k < 300; ++k) {
    PW u = random_word(sys, 1, 4, rng);
    CHECK(in_factor(sys, u, FactorTag::base) == oracle_in_factor(sys, u, FactorTag::base));
    CHECK(in_factor(sys, u, FactorTag::copy) == oracle_in_factor(sys, u, FactorTag::copy));
  }
}

TEST_CASE("equal and is_identity agree with the coset-walk oracle exhaustively") {
  PermSystem sys = PermSystem::sym6();
  std::vector<PW> letters = alphabet20(sys);
  REQUIRE(letters.size() == 20);

  std::vector<PW> words;
  for (int a = 0; a < 20; ++a) {
    words.push_back(concat(letters, {a}));
    for (int b = 0; b < 20; ++b) words.push_back(concat(letters, {a, b}));
  }
  PW prev = PW::one(1);
  for (const PW& w : words) {
    CHECK(is_identity(sys, w) == oracle_is_identity(sys, w));
    CHECK(equal(sys, prev, w) == oracle_equal(sys, prev, w));
    prev = w;
  }
}

TEST_CASE("reduce is idempotent, subadditive and confluent") {
  PermSystem sys = PermSystem::sym6();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 60; ++k) {
    PW u = random_word(sys, 1, 5, rng);
    PW w = random_word(sys, 1, 5, rng);
    PW r = reduce(sys, u);
    CHECK(same_syllables(sys, r, reduce(sys, r)));
    CHECK(mul(sys, u, w).syls.size() <= u.syls.size() + w.syls.size());

    // randomized rewrite schedules land on the same reduced word
    PW cat{1, false, u.syls};
    cat.syls.insert(cat.syls.end(), w.syls.begin(), w.syls.end());
    PW stack_form = reduce(sys, cat);
    for (int s = 0; s < 25; ++s) {
      PW random_form = randomized_reduce(sys, cat, rng);
      CHECK(same_syllables(sys, stack_form, random_form));
    }
  }

  // a thousand schedules per word on a smaller batch, HNN letters included
  PermSystem hnn = PermSystem::sym5_hnn_base();
  for (int k = 0; k < 8; ++k) {
    PW w = PW::one(1, true);
    int len = 2 + static_cast<int>(rng() % 5);
    for (int s = 0; s < len; ++s) {
      switch (rng() % 3) {
        case 0: w.syls.push_back(Syllable<Perm>::stable((rng() % 2) ? 1 : -1)); break;
        case 1: w.syls.push_back(Syllable<Perm>::factor(FactorTag::base, hnn.sample(rng))); break;
        default: w.syls.push_back(Syllable<Perm>::factor(FactorTag::copy, hnn.sample(rng)));
      }
    }
    PW stack_form = reduce(hnn, w);
    for (int s = 0; s < 1000; ++s)
      CHECK(same_syllables(hnn, stack_form, randomized_reduce(hnn, w, rng)));
  }
}

TEST_CASE("normal form theorem: reduced length >= 2 is never the identity") {
  PermSystem sys = PermSystem::sym6();
  std::mt19937_64 rng(23);
  for (int k = 0; k < 400; ++k) {
    PW w = reduce(sys, random_word(sys, 1, 6, rng));
    if (w.syls.size() >= 2) {
      CHECK(!oracle_is_identity(sys, w));
      CHECK(!is_identity(sys, w));
    }
  }
}

TEST_CASE("equal requires matching stage") {
  PermSystem sys = PermSystem::sym6();
  PW u = PW::one(1), w = PW::one(2);
  CHECK(equal(sys, u, u));
  CHECK_THROWS_AS(equal(sys, u, w), std::invalid_argument);
}

TEST_CASE("britton: pinches and the centralized edge") {
  PermSystem sys = PermSystem::sym5_hnn_base();
  PW t = PW::stable_letter(1, 1);
  PW tinv = PW::stable_letter(1, -1);
  // t (1 2) t^-1 -> (1 2): the stable letter centralizes Sym(4)
  PW w = mul(sys, mul(sys, t, PW::factor(1, FactorTag::base, Perm::cycle(5, {1, 2}), true)), tinv);
  REQUIRE(w.syls.size() == 1);
  CHECK(w.syls[0].payload == Perm::cycle(5, {1, 2}));

  // no pinch for (4 5), which lies outside the associated subgroup
  PW v = mul(sys, mul(sys, t, PW::factor(1, FactorTag::base, Perm::cycle(5, {4, 5}), true)), tinv);
  CHECK(v.syls.size() == 3);

  // t t^-1 and t^-1 t vanish
  CHECK(is_identity(sys, mul(sys, t, tinv)));
  CHECK(is_identity(sys, mul(sys, tinv, t)));

  // a pinch whose base segment only collapses after amalgam reduction:
  // t [M:g] [M_1:g^-1] t^-1 with g in Sym(4)
  Perm g = Perm::cycle(5, {1, 2, 3});
  PW mixed{1, true,
           {Syllable<Perm>::stable(1), Syllable<Perm>::factor(FactorTag::base, g),
            Syllable<Perm>::factor(FactorTag::copy, g.inverse()), Syllable<Perm>::stable(-1)}};
  CHECK(is_identity(sys, mixed));
}

TEST_CASE("britton: order probe") {
  PermSystem sys = PermSystem::sym5_hnn_base();
  PW id = PW::one(1, true);
  OrderProbe p0 = order_probe(sys, id, 10);
  CHECK(p0.exact);
  CHECK(p0.order == 1);

  PW transposition = PW::factor(1, FactorTag::base, Perm::cycle(5, {1, 2}), true);
  OrderProbe p1 = order_probe(sys, transposition, 10);
  CHECK(p1.exact);
  CHECK(p1.order == 2);

  // c^-1 * c^{t c t^-1} has infinite order: Britton length grows linearly
  Perm c = Perm::cycle(5, {4, 5});
  PW t = PW::stable_letter(1, 1);
  PW tinv = PW::stable_letter(1, -1);
  PW cw = PW::factor(1, FactorTag::base, c, true);
  PW cwi = PW::factor(1, FactorTag::base, c.inverse(), true);
  PW conj = mul(sys, mul(sys, mul(sys, mul(sys, t, cw), tinv), cw),
                mul(sys, mul(sys, t, cwi), tinv));
  PW word = mul(sys, cwi, conj);
  OrderProbe probe = order_probe(sys, word, 12);
  CHECK(!probe.exact);
  CHECK(probe.order == 12);
}

TEST_CASE("britton: intersection scan recovers G_{n-1} exactly") {
  PermSystem sys = PermSystem::sym5_hnn_base();
  std::vector<Perm> scanned = intersection_scan(sys, 1, 1);
  std::vector<Perm> expected = sys.level_elements(0);
  CHECK(scanned.size() == 24);
  std::sort(scanned.begin(), scanned.end());
  std::sort(expected.begin(), expected.end());
  CHECK(scanned == expected);

  // containment direction: everything in G_{n-1} survives the scan
  for (const Perm& g : expected)
    CHECK(std::find(scanned.begin(), scanned.end(), g) != scanned.end());

  // (4 5) is excluded: the conjugate has reduced length 3
  CHECK(std::find(scanned.begin(), scanned.end(), Perm::cycle(5, {4, 5})) == scanned.end());
}

TEST_CASE("word json round trip") {
  PermSystem sys = PermSystem::sym6();
  std::mt19937_64 rng(3);
  PW w = random_word(sys, 1, 4, rng);
  nlohmann::json j = word_json(sys, w);
  CHECK(j["stage"] == 1);
  CHECK(j["syllables"].size() == w.syls.size());
}

}  // TEST_SUITE
