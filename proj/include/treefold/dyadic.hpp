#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace treefold {

// Exact rational with a power-of-two denominator: value = num / 2^exp.
// Canonical form: exp == 0 when num == 0, otherwise num is odd or exp == 0.
// The whole repository computes over these; there is no floating point.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t num, int exp);

  static Dyadic zero() { return Dyadic(); }
  static Dyadic one() { return Dyadic(1, 0); }
  // 2^k for any integer k (negative k gives 1/2^{-k}).
  static Dyadic pow2(int k);

  std::int64_t num() const { return num_; }
  int exp() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return exp_ == 0; }

  Dyadic operator-() const;
  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);

  Dyadic mul_pow2(int k) const;  // value * 2^k, exact
  Dyadic halve() const { return mul_pow2(-1); }

  friend bool operator==(const Dyadic& a, const Dyadic& b) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  std::string str() const;  // "3/2^4" or plain integer text

  nlohmann::json to_json() const;  // [num, exp]
  static Dyadic from_json(const nlohmann::json& j);

 private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return a < b ? a : b; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a < b ? b : a; }

}  // namespace treefold
