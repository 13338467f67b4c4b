#include "treefold/dyadic.hpp"

#include <cassert>
#include <stdexcept>

namespace treefold {

namespace {

// Guard against silent overflow; exponents stay tiny in practice.
void check_exp(int exp) {
  if (exp < 0 || exp > 62) throw std::overflow_error("Dyadic exponent out of range");
}

std::int64_t shl_checked(std::int64_t n, int k) {
  assert(k >= 0 && k <= 62);
  if (n > (INT64_MAX >> k) || n < (INT64_MIN >> k))
    throw std::overflow_error("Dyadic numerator overflow");
  return n << k;
}

}  // namespace

Dyadic::Dyadic(std::int64_t num, int exp) : num_(num), exp_(exp) {
  check_exp(exp);
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && num_ % 2 == 0) {
    num_ /= 2;
    --exp_;
  }
}

Dyadic Dyadic::pow2(int k) {
  if (k >= 0) return Dyadic(shl_checked(1, k), 0);
  return Dyadic(1, -k);
}

Dyadic Dyadic::operator-() const { return Dyadic(-num_, exp_); }

Dyadic operator+(const Dyadic& a, const Dyadic& b) {
  int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
  return Dyadic(shl_checked(a.num_, e - a.exp_) + shl_checked(b.num_, e - b.exp_), e);
}

Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

Dyadic operator*(const Dyadic& a, const Dyadic& b) {
  if (a.num_ != 0 && b.num_ != 0) {
    std::int64_t mag_a = a.num_ < 0 ? -a.num_ : a.num_;
    if (mag_a > INT64_MAX / (b.num_ < 0 ? -b.num_ : b.num_))
      throw std::overflow_error("Dyadic product overflow");
  }
  return Dyadic(a.num_ * b.num_, a.exp_ + b.exp_);
}

Dyadic Dyadic::mul_pow2(int k) const {
  if (num_ == 0) return Dyadic();
  if (k >= 0) {
    int drop = k < exp_ ? k : exp_;
    return Dyadic(shl_checked(num_, k - drop), exp_ - drop);
  }
  return Dyadic(num_, exp_ - k);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  int e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
  return shl_checked(a.num_, e - a.exp_) <=> shl_checked(b.num_, e - b.exp_);
}

std::string Dyadic::str() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

nlohmann::json Dyadic::to_json() const { return nlohmann::json::array({num_, exp_}); }

Dyadic Dyadic::from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("Dyadic: expected [num, exp]");
  return Dyadic(j[0].get<std::int64_t>(), j[1].get<int>());
}

}  // namespace treefold
