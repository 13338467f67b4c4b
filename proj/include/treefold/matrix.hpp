#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace treefold {

// Upper unitriangular n x n matrix over the prime field F_p.
class UTMatrix {
 public:
  UTMatrix() = default;
  UTMatrix(int n, int p);  // identity

  static UTMatrix transvection(int n, int p, int row, int col, int value = 1);

  int dim() const { return n_; }
  int field() const { return p_; }
  int at(int r, int c) const { return entries_[idx(r, c)]; }

  UTMatrix operator*(const UTMatrix& rhs) const;
  UTMatrix inverse() const;
  bool is_identity() const;

  // Embeds into UT(m, F_p) as the stabilizer of the last basis vectors.
  UTMatrix extend_to(int m) const;

  friend bool operator==(const UTMatrix&, const UTMatrix&) = default;
  friend bool operator<(const UTMatrix& a, const UTMatrix& b) { return a.entries_ < b.entries_; }

  std::string key() const;
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  std::size_t idx(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(c);
  }
  int n_ = 0;
  int p_ = 2;
  std::vector<std::uint8_t> entries_;
};

}  // namespace treefold
