#include <algorithm>
#include <random>

#include "doctest.h"
#include "treefold/chains.hpp"
#include "treefold/finite_group.hpp"
#include "treefold/matrix.hpp"
#include "treefold/perm.hpp"
#include "treefold/perm_system.hpp"

using namespace treefold;

namespace {

FiniteGroup<Perm> alt5() {
  return FiniteGroup<Perm>(Perm(5), {Perm::cycle(5, {1, 2, 3}), Perm::cycle(5, {1, 2, 3, 4, 5})});
}

}  // namespace

TEST_SUITE("permsys") {

TEST_CASE("perm basics") {
  Perm p = Perm::cycle(5, {1, 2, 3});
  CHECK(p.apply(1) == 2);
  CHECK((p * p * p).is_identity());
  CHECK(p.inverse() * p == Perm(5));
  CHECK(Perm::from_cycles(6, {{5, 6}}).str() == "(5 6)");
  CHECK_THROWS_AS(Perm({1, 1, 2}), std::invalid_argument);
}

TEST_CASE("ut matrices") {
  UTMatrix e12 = UTMatrix::transvection(3, 2, 0, 1);
  UTMatrix e23 = UTMatrix::transvection(3, 2, 1, 2);
  CHECK((e12 * e12).is_identity());  // char 2
  CHECK(e12 * e12.inverse() == UTMatrix(3, 2));
  UTMatrix comm = e12 * e23 * e12.inverse() * e23.inverse();
  CHECK(comm == UTMatrix::transvection(3, 2, 0, 2));  // [E12,E23] = E13
  UTMatrix m5 = UTMatrix::transvection(4, 5, 0, 1, 3);
  CHECK((m5 * m5.inverse()).is_identity());
  CHECK(e12.extend_to(4).dim() == 4);
}

TEST_CASE("enumerate: orders") {
  CHECK(alt5().order() == 60);
  FiniteGroup<UTMatrix> ut3(UTMatrix(3, 2), {UTMatrix::transvection(3, 2, 0, 1),
                                             UTMatrix::transvection(3, 2, 1, 2)});
  CHECK(ut3.order() == 8);
  FiniteGroup<Perm> trivial(Perm(4), {});
  CHECK(trivial.order() == 1);
  CHECK(trivial.elements()[0].is_identity());
}

TEST_CASE("enumeration guard trips on oversized groups") {
  // UT(8, F_3) has order 3^28, far beyond the desk-scale guard
  std::vector<UTMatrix> gens;
  for (int r = 0; r + 1 < 8; ++r) gens.push_back(UTMatrix::transvection(8, 3, r, r + 1));
  FiniteGroup<UTMatrix> huge(UTMatrix(8, 3), gens);
  CHECK_THROWS_AS(huge.order(), std::runtime_error);
}

TEST_CASE("enumerate is generator-order independent") {
  FiniteGroup<Perm> a(Perm(5), {Perm::cycle(5, {1, 2, 3}), Perm::cycle(5, {1, 2, 3, 4, 5})});
  FiniteGroup<Perm> b(Perm(5), {Perm::cycle(5, {1, 2, 3, 4, 5}), Perm::cycle(5, {1, 2, 3})});
  auto ka = a.elements();
  auto kb = b.elements();
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  CHECK(ka == kb);
}

TEST_CASE("normal closure") {
  auto g = alt5();
  // Alt(5) is simple: the closure of any 3-cycle is everything.
  CHECK(normal_closure<Perm>({Perm::cycle(5, {1, 2, 3})}, g).size() == 60);
  CHECK(normal_closure<Perm>({Perm(5)}, g).size() == 1);

  FiniteGroup<UTMatrix> ut3(UTMatrix(3, 2), {UTMatrix::transvection(3, 2, 0, 1),
                                             UTMatrix::transvection(3, 2, 1, 2)});
  // the central transvection generates the center, of order 2
  auto center = normal_closure<UTMatrix>({UTMatrix::transvection(3, 2, 0, 2)}, ut3);
  CHECK(center.size() == 2);

  // normality: closed under conjugation by every element
  auto cls = normal_closure<Perm>({Perm::from_cycles(5, {{1, 2}, {3, 4}})}, g);
  std::unordered_set<std::string> keys;
  for (const auto& h : cls) keys.insert(h.key());
  for (const auto& x : g.elements())
    for (const auto& h : cls) CHECK(keys.count((x * h * x.inverse()).key()) == 1);
}

TEST_CASE("condition51") {
  CHECK(condition51(alt_chain(), 1).passed());
  CHECK(condition51(alt_chain(), 2).passed());
  CHECK(condition51(ut_chain(2), 1).passed());
  CHECK(condition51(ut_chain(2), 2).passed());
  CheckReport bad = condition51(c2_in_c4_chain(), 1);
  CHECK(bad.failed());
  REQUIRE(bad.witnesses.size() == 1);
  // the witness is the order-2 element of C_4, re-checkable in isolation
  Perm w = Perm::from_json(bad.witnesses[0]["g"], 4);
  CHECK(w == Perm::from_cycles(4, {{1, 3}, {2, 4}}));
}

TEST_CASE("chain embeddings are homomorphisms") {
  auto chain = alt_chain();
  auto g5 = chain.level(1);
  std::mt19937_64 rng(3);
  const auto& elems = g5.elements();
  for (int k = 0; k < 200; ++k) {
    const Perm& a = elems[rng() % elems.size()];
    const Perm& b = elems[rng() % elems.size()];
    CHECK(chain.embed(a * b, 1) == chain.embed(a, 1) * chain.embed(b, 1));
    CHECK((chain.embed(a, 1) == chain.embed(b, 1)) == (a == b));
  }
}

TEST_CASE("sym6 system: the truncated depth-1 P-system") {
  PermSystem sys = PermSystem::sym6();
  CHECK(sys.depth() == 1);
  CHECK(sys.elements().size() == 720);
  CHECK(sys.level_elements(0).size() == 24);
  CHECK(sys.level_elements(1).size() == 120);
  CHECK(sys.transversal(0).size() == 30);
  CHECK(sys.transversal(0)[0].is_identity());

  // a_1 = (5 6) centralizes Sym(4) (disjoint supports), exhaustively
  Perm a1 = sys.level_conjugator(1);
  for (const Perm& g : sys.level_elements(0)) CHECK(a1 * g == g * a1);

  // G_1 cap G_1^{a_1} = Sym(4): exhaustive set intersection
  int count = 0;
  for (const Perm& g : sys.elements()) {
    bool in_g1 = sys.in_level(g, 1);
    bool in_conj = sys.in_level(a1.inverse() * g * a1, 1);
    if (in_g1 && in_conj) {
      ++count;
      CHECK(sys.in_level(g, 0));
    }
  }
  CHECK(count == 24);

  // coset representatives: minimal, consistent
  std::mt19937_64 rng(9);
  for (int k = 0; k < 100; ++k) {
    Perm g = sys.sample(rng);
    const Perm& r = sys.coset_rep(g, 0);
    CHECK(sys.in_level(r.inverse() * g, 0));
  }
}

}  // TEST_SUITE
