#include "treefold/chains.hpp"

namespace treefold {

namespace {

FiniteGroup<Perm> alternating(int degree) {
  std::vector<Perm> gens;
  gens.push_back(Perm::cycle(degree, {1, 2, 3}));
  if (degree >= 4) {
    if (degree % 2 == 1) {
      std::vector<int> pts;
      for (int k = 1; k <= degree; ++k) pts.push_back(k);
      gens.push_back(Perm::cycle(degree, pts));
    } else {
      std::vector<int> pts;
      for (int k = 2; k <= degree; ++k) pts.push_back(k);
      gens.push_back(Perm::cycle(degree, pts));
    }
  }
  return FiniteGroup<Perm>(Perm(degree), std::move(gens));
}

FiniteGroup<UTMatrix> unitriangular(int n, int p) {
  std::vector<UTMatrix> gens;
  for (int r = 0; r + 1 < n; ++r)
    for (int v = 1; v < p; ++v) gens.push_back(UTMatrix::transvection(n, p, r, r + 1, v));
  return FiniteGroup<UTMatrix>(UTMatrix(n, p), std::move(gens));
}

}  // namespace

Chain<Perm> alt_chain(int max_level) {
  Chain<Perm> c;
  c.name = "alt";
  c.max_level = max_level;
  c.level = [](int i) {
    if (i == 0) return FiniteGroup<Perm>(Perm(4), {});  // trivial, realized in degree 4
    return alternating(i + 4);
  };
  // Alt(j) sits in Alt(j+1) leaving the last point fixed.
  c.embed = [](const Perm& g, int i) {
    int target = (i + 1) + 4;
    std::vector<int> images;
    images.reserve(static_cast<std::size_t>(target));
    for (int x = 1; x <= g.degree(); ++x) images.push_back(g.apply(x));
    for (int x = g.degree() + 1; x <= target; ++x) images.push_back(x);
    return Perm(std::move(images));
  };
  return c;
}

Chain<UTMatrix> ut_chain(int p, int max_level) {
  Chain<UTMatrix> c;
  c.name = "ut";
  c.max_level = max_level;
  c.level = [p](int i) {
    if (i == 0) return FiniteGroup<UTMatrix>(UTMatrix(3, p), {});
    return unitriangular(i + 2, p);
  };
  // UT(j) sits in UT(j+1) as the stabilizer of the last basis vector.
  c.embed = [](const UTMatrix& g, int i) { return g.extend_to((i + 1) + 2); };
  return c;
}

Chain<Perm> c2_in_c4_chain() {
  Chain<Perm> c;
  c.name = "c2c4";
  c.max_level = 1;
  c.level = [](int i) {
    if (i == 0)
      return FiniteGroup<Perm>(Perm(4), {Perm::from_cycles(4, {{1, 3}, {2, 4}})});
    return FiniteGroup<Perm>(Perm(4), {Perm::cycle(4, {1, 2, 3, 4})});
  };
  c.embed = [](const Perm& g, int) { return g; };
  return c;
}

}  // namespace treefold
