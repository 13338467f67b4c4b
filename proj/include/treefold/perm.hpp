#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace treefold {

// Permutation of {1..degree}, stored as the image list (1-based).
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree);                      // identity
  explicit Perm(std::vector<int> images);        // validates bijectivity
  static Perm cycle(int degree, const std::vector<int>& points);
  static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles);

  int degree() const { return static_cast<int>(images_.size()); }
  int apply(int point) const { return images_[static_cast<std::size_t>(point - 1)]; }

  Perm operator*(const Perm& rhs) const;  // this after rhs: (p*q)(x) = p(q(x))
  Perm inverse() const;

  bool is_identity() const;
  bool fixes(int point) const { return apply(point) == point; }
  // Fixes every point > bound.
  bool fixes_above(int bound) const;

  friend bool operator==(const Perm&, const Perm&) = default;
  friend bool operator<(const Perm& a, const Perm& b) { return a.images_ < b.images_; }

  std::string key() const;  // compact string, usable as a hash key
  std::string str() const;  // cycle notation
  nlohmann::json to_json() const;
  static Perm from_json(const nlohmann::json& j, int degree);

 private:
  std::vector<int> images_;
};

}  // namespace treefold
