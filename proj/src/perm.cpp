#include "treefold/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treefold {

Perm::Perm(int degree) : images_(static_cast<std::size_t>(degree)) {
  if (degree < 0) throw std::invalid_argument("Perm: negative degree");
  std::iota(images_.begin(), images_.end(), 1);
}

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 1 || v > degree() || seen[static_cast<std::size_t>(v - 1)])
      throw std::invalid_argument("Perm: image list is not a bijection");
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
}

Perm Perm::cycle(int degree, const std::vector<int>& points) {
  Perm p(degree);
  for (std::size_t i = 0; i < points.size(); ++i) {
    int from = points[i];
    int to = points[(i + 1) % points.size()];
    if (from < 1 || from > degree) throw std::invalid_argument("Perm::cycle: point out of range");
    p.images_[static_cast<std::size_t>(from - 1)] = to;
  }
  Perm check(p.images_);  // validate
  return check;
}

Perm Perm::from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
  Perm p(degree);
  for (const auto& c : cycles) p = p * cycle(degree, c);
  return p;
}

Perm Perm::operator*(const Perm& rhs) const {
  if (degree() != rhs.degree()) throw std::invalid_argument("Perm: degree mismatch");
  std::vector<int> out(images_.size());
  for (int x = 1; x <= degree(); ++x)
    out[static_cast<std::size_t>(x - 1)] = apply(rhs.apply(x));
  return Perm(std::move(out));
}

Perm Perm::inverse() const {
  std::vector<int> out(images_.size());
  for (int x = 1; x <= degree(); ++x) out[static_cast<std::size_t>(apply(x) - 1)] = x;
  return Perm(std::move(out));
}

bool Perm::is_identity() const {
  for (int x = 1; x <= degree(); ++x)
    if (apply(x) != x) return false;
  return true;
}

bool Perm::fixes_above(int bound) const {
  for (int x = bound + 1; x <= degree(); ++x)
    if (apply(x) != x) return false;
  return true;
}

std::string Perm::key() const {
  std::string k;
  k.reserve(images_.size());
  for (int v : images_) k.push_back(static_cast<char>('0' + v));
  return k;
}

std::string Perm::str() const {
  if (is_identity()) return "()";
  std::string s;
  std::vector<bool> done(images_.size(), false);
  for (int x = 1; x <= degree(); ++x) {
    if (done[static_cast<std::size_t>(x - 1)] || apply(x) == x) continue;
    s += "(";
    int y = x;
    bool first = true;
    while (!done[static_cast<std::size_t>(y - 1)]) {
      done[static_cast<std::size_t>(y - 1)] = true;
      s += (first ? "" : " ") + std::to_string(y);
      first = false;
      y = apply(y);
    }
    s += ")";
  }
  return s;
}

nlohmann::json Perm::to_json() const { return nlohmann::json(images_); }

Perm Perm::from_json(const nlohmann::json& j, int degree) {
  std::vector<int> images = j.get<std::vector<int>>();
  if (static_cast<int>(images.size()) != degree)
    throw std::invalid_argument("Perm::from_json: degree mismatch");
  return Perm(std::move(images));
}

}  // namespace treefold
