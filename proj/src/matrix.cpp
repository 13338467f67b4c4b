#include "treefold/matrix.hpp"

#include <stdexcept>

namespace treefold {

UTMatrix::UTMatrix(int n, int p) : n_(n), p_(p), entries_(static_cast<std::size_t>(n) * n, 0) {
  if (n < 1 || p < 2) throw std::invalid_argument("UTMatrix: bad dimensions");
  for (int i = 0; i < n; ++i) entries_[idx(i, i)] = 1;
}

UTMatrix UTMatrix::transvection(int n, int p, int row, int col, int value) {
  if (!(0 <= row && row < col && col < n))
    throw std::invalid_argument("UTMatrix::transvection: need row < col");
  UTMatrix m(n, p);
  m.entries_[m.idx(row, col)] = static_cast<std::uint8_t>(((value % p) + p) % p);
  return m;
}

UTMatrix UTMatrix::operator*(const UTMatrix& rhs) const {
  if (n_ != rhs.n_ || p_ != rhs.p_) throw std::invalid_argument("UTMatrix: shape mismatch");
  UTMatrix out(n_, p_);
  for (int r = 0; r < n_; ++r)
    for (int c = r; c < n_; ++c) {
      int acc = 0;
      for (int k = r; k <= c; ++k) acc += at(r, k) * rhs.at(k, c);
      out.entries_[idx(r, c)] = static_cast<std::uint8_t>(acc % p_);
    }
  return out;
}

UTMatrix UTMatrix::inverse() const {
  // (I + N)^-1 = I - N + N^2 - ... ; N is nilpotent of index <= n.
  UTMatrix nil(n_, p_);
  for (int i = 0; i < n_; ++i) nil.entries_[nil.idx(i, i)] = 0;
  for (int r = 0; r < n_; ++r)
    for (int c = r + 1; c < n_; ++c) nil.entries_[nil.idx(r, c)] = entries_[idx(r, c)];

  UTMatrix out(n_, p_);
  UTMatrix power = nil;
  int sign = -1;
  for (int k = 1; k < n_; ++k) {
    for (int r = 0; r < n_; ++r)
      for (int c = r + 1; c < n_; ++c) {
        int term = sign * power.at(r, c);
        int cur = out.at(r, c) + term;
        out.entries_[out.idx(r, c)] = static_cast<std::uint8_t>(((cur % p_) + p_) % p_);
      }
    // power <- power * nil, computed over the strictly upper part
    UTMatrix next(n_, p_);
    for (int i = 0; i < n_; ++i) next.entries_[next.idx(i, i)] = 0;
    for (int r = 0; r < n_; ++r)
      for (int c = r + 1; c < n_; ++c) {
        int acc = 0;
        for (int m = r + 1; m < c; ++m) acc += power.at(r, m) * nil.at(m, c);
        next.entries_[next.idx(r, c)] = static_cast<std::uint8_t>(acc % p_);
      }
    power = next;
    sign = -sign;
  }
  return out;
}

bool UTMatrix::is_identity() const {
  for (int r = 0; r < n_; ++r)
    for (int c = r + 1; c < n_; ++c)
      if (at(r, c) != 0) return false;
  return true;
}

UTMatrix UTMatrix::extend_to(int m) const {
  if (m < n_) throw std::invalid_argument("UTMatrix::extend_to: cannot shrink");
  UTMatrix out(m, p_);
  for (int r = 0; r < n_; ++r)
    for (int c = r; c < n_; ++c) out.entries_[out.idx(r, c)] = at(r, c);
  return out;
}

std::string UTMatrix::key() const {
  std::string k;
  k.reserve(entries_.size());
  for (std::uint8_t v : entries_) k.push_back(static_cast<char>('0' + v));
  return k;
}

std::string UTMatrix::str() const {
  std::string s;
  for (int r = 0; r < n_; ++r) {
    s += r == 0 ? "[" : " ";
    for (int c = 0; c < n_; ++c) s += std::to_string(at(r, c)) + (c + 1 < n_ ? " " : "");
    s += r + 1 < n_ ? ";" : "]";
  }
  return s;
}

nlohmann::json UTMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < n_; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < n_; ++c) row.push_back(at(r, c));
    rows.push_back(row);
  }
  return nlohmann::json{{"p", p_}, {"rows", rows}};
}

}  // namespace treefold
