#include "treefold/perm_system.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treefold {

PermSystem::PermSystem(std::string name, int degree, std::vector<int> level_degrees,
                       std::vector<Perm> conjugators)
    : name_(std::move(name)),
      degree_(degree),
      level_degrees_(std::move(level_degrees)),
      conjugators_(std::move(conjugators)) {
  if (level_degrees_.empty()) throw std::invalid_argument("PermSystem: empty chain");
  for (std::size_t k = 0; k < level_degrees_.size(); ++k) {
    if (level_degrees_[k] > degree_ || (k > 0 && level_degrees_[k] <= level_degrees_[k - 1]))
      throw std::invalid_argument("PermSystem: chain must be strictly ascending");
  }
  if (conjugators_.size() + 1 != level_degrees_.size())
    throw std::invalid_argument("PermSystem: need one conjugator per level >= 1");

  std::vector<int> images(static_cast<std::size_t>(degree_));
  std::iota(images.begin(), images.end(), 1);
  do {
    elements_.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));

  transversals_.resize(level_degrees_.size());
  rep_by_key_.resize(level_degrees_.size());
  for (std::size_t i = 0; i < level_degrees_.size(); ++i) {
    auto& reps = rep_by_key_[i];
    for (const Perm& g : elements_) {
      auto [it, fresh] = reps.emplace(coset_key(g, static_cast<int>(i)), g);
      if (!fresh && g < it->second) it->second = g;
    }
    auto& cache = transversals_[i];
    cache.reserve(reps.size());
    for (auto& [key, rep] : reps) cache.push_back(rep);
    std::sort(cache.begin(), cache.end(), [](const Perm& a, const Perm& b) {
      if (a.is_identity() != b.is_identity()) return a.is_identity();
      return a < b;
    });
  }
}

PermSystem PermSystem::sym6() {
  return PermSystem("sym6", 6, {4, 5}, {Perm::cycle(6, {5, 6})});
}

PermSystem PermSystem::sym7_bad() {
  return PermSystem("sym7-bad", 7, {4, 5}, {Perm::cycle(7, {5, 6})});
}

PermSystem PermSystem::sym5_hnn_base() {
  return PermSystem("sym5-hnn", 5, {4, 5}, {Perm(5)});
}

bool PermSystem::in_level(const Perm& g, int i) const {
  if (i < 0 || i > depth()) throw std::invalid_argument("PermSystem: level out of range");
  return g.fixes_above(level_degrees_[static_cast<std::size_t>(i)]);
}

Perm PermSystem::level_conjugator(int i) const {
  if (i < 1 || i > depth()) throw std::invalid_argument("PermSystem: conjugator out of range");
  return conjugators_[static_cast<std::size_t>(i - 1)];
}

Perm PermSystem::sample(std::mt19937_64& rng) const {
  std::vector<int> images(static_cast<std::size_t>(degree_));
  std::iota(images.begin(), images.end(), 1);
  std::shuffle(images.begin(), images.end(), rng);
  return Perm(std::move(images));
}

Perm PermSystem::sample_level(int i, std::mt19937_64& rng, bool proper) const {
  int d = level_degrees_[static_cast<std::size_t>(i)];
  for (int attempt = 0; attempt < 4096; ++attempt) {
    std::vector<int> images(static_cast<std::size_t>(degree_));
    std::iota(images.begin(), images.end(), 1);
    std::shuffle(images.begin(), images.begin() + d, rng);
    Perm g(std::move(images));
    if (proper && (i > 0 ? in_level(g, i - 1) : g.is_identity())) continue;
    return g;
  }
  throw std::runtime_error("PermSystem: level sampling failed");
}

const std::vector<Perm>& PermSystem::elements() const { return elements_; }

std::vector<Perm> PermSystem::level_elements(int i) const {
  std::vector<Perm> out;
  for (const Perm& g : elements())
    if (in_level(g, i)) out.push_back(g);
  return out;
}

std::vector<Perm> PermSystem::level_generators(int i) const {
  int d = level_degrees_[static_cast<std::size_t>(i)];
  std::vector<Perm> gens;
  if (d >= 2) gens.push_back(Perm::cycle(degree_, {1, 2}));
  if (d >= 3) {
    std::vector<int> pts;
    for (int k = 1; k <= d; ++k) pts.push_back(k);
    gens.push_back(Perm::cycle(degree_, pts));
  }
  return gens;
}

std::vector<Perm> PermSystem::generators() const {
  std::vector<Perm> gens;
  gens.push_back(Perm::cycle(degree_, {1, 2}));
  std::vector<int> pts;
  for (int k = 1; k <= degree_; ++k) pts.push_back(k);
  gens.push_back(Perm::cycle(degree_, pts));
  return gens;
}

std::string PermSystem::coset_key(const Perm& g, int i) const {
  std::string key;
  for (int x = level_degrees_[static_cast<std::size_t>(i)] + 1; x <= degree_; ++x)
    key.push_back(static_cast<char>('0' + g.apply(x)));
  return key;
}

const std::vector<Perm>& PermSystem::transversal(int i) const {
  return transversals_[static_cast<std::size_t>(i)];
}

const Perm& PermSystem::coset_rep(const Perm& g, int i) const {
  return rep_by_key_[static_cast<std::size_t>(i)].at(coset_key(g, i));
}

}  // namespace treefold
