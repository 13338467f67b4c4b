#pragma once

#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace treefold {

inline constexpr std::size_t kEnumerationGuard = 1'000'000;

// Finitely generated group given by explicit generators; elements are value
// types with *, inverse(), is_identity(), key().  Desk scale only: closure by
// breadth-first search behind an order guard.
template <class Elem>
class FiniteGroup {
 public:
  FiniteGroup(Elem id, std::vector<Elem> generators)
      : id_(std::move(id)), gens_(std::move(generators)) {}

  const Elem& identity() const { return id_; }
  const std::vector<Elem>& generators() const { return gens_; }

  const std::vector<Elem>& elements() const {
    if (elements_.empty()) enumerate();
    return elements_;
  }

  std::size_t order() const { return elements().size(); }

  bool contains(const Elem& g) const {
    elements();
    return keys_.count(g.key()) > 0;
  }

 private:
  void enumerate() const {
    std::deque<Elem> queue;
    queue.push_back(id_);
    keys_.insert(id_.key());
    while (!queue.empty()) {
      Elem g = queue.front();
      queue.pop_front();
      elements_.push_back(g);
      for (const Elem& s : gens_) {
        Elem h = g * s;
        if (keys_.insert(h.key()).second) {
          if (keys_.size() > kEnumerationGuard)
            throw std::runtime_error("FiniteGroup: enumeration guard exceeded");
          queue.push_back(h);
        }
      }
    }
  }

  Elem id_;
  std::vector<Elem> gens_;
  mutable std::vector<Elem> elements_;
  mutable std::unordered_set<std::string> keys_;
};

namespace detail {

// Conjugation orbit of seed (and inverses) under the group's generators: a
// G-invariant generating set of the normal closure.
template <class Elem>
std::vector<Elem> conjugation_orbit(const std::vector<Elem>& seed, const FiniteGroup<Elem>& group) {
  std::unordered_set<std::string> keys;
  std::vector<Elem> orbit;
  std::deque<Elem> queue;
  auto push = [&](Elem g) {
    if (keys.insert(g.key()).second) {
      if (keys.size() > kEnumerationGuard)
        throw std::runtime_error("normal_closure: orbit guard exceeded");
      orbit.push_back(g);
      queue.push_back(std::move(g));
    }
  };
  for (const Elem& s : seed) {
    push(s);
    push(s.inverse());
  }
  while (!queue.empty()) {
    Elem g = queue.front();
    queue.pop_front();
    for (const Elem& s : group.generators()) {
      push(s * g * s.inverse());
      push(s.inverse() * g * s);
    }
  }
  return orbit;
}

}  // namespace detail

// Smallest normal subgroup of `group` containing `seed`.  `visit` sees every
// element once; returning false aborts the enumeration early (the partial
// result is returned).
template <class Elem, class Visit>
std::vector<Elem> normal_closure_visit(const std::vector<Elem>& seed,
                                       const FiniteGroup<Elem>& group, Visit visit) {
  std::vector<Elem> gens = detail::conjugation_orbit(seed, group);
  std::unordered_set<std::string> keys;
  std::vector<Elem> closure;
  std::deque<Elem> queue;
  keys.insert(group.identity().key());
  closure.push_back(group.identity());
  queue.push_back(group.identity());
  if (!visit(group.identity())) return closure;
  while (!queue.empty()) {
    Elem g = queue.front();
    queue.pop_front();
    for (const Elem& s : gens) {
      Elem h = g * s;
      if (keys.insert(h.key()).second) {
        if (keys.size() > kEnumerationGuard)
          throw std::runtime_error("normal_closure: guard exceeded");
        closure.push_back(h);
        queue.push_back(h);
        if (!visit(closure.back())) return closure;
      }
    }
  }
  return closure;
}

template <class Elem>
std::vector<Elem> normal_closure(const std::vector<Elem>& seed, const FiniteGroup<Elem>& group) {
  return normal_closure_visit(seed, group, [](const Elem&) { return true; });
}

}  // namespace treefold
