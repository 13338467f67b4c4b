#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace treefold {

// Which factor of the stage-i amalgam L_i = M *_{G_{i-1}} M_i a syllable
// lives in.  Copies are formal: payloads are always elements of the
// underlying group M, the tag records which copy they sit in.
enum class FactorTag : std::uint8_t { base = 0, copy = 1 };

inline FactorTag other(FactorTag t) {
  return t == FactorTag::base ? FactorTag::copy : FactorTag::base;
}

template <class E>
struct Syllable {
  enum class Kind : std::uint8_t { factor, stable };
  Kind kind = Kind::factor;
  FactorTag tag = FactorTag::base;
  E payload{};
  int exp = 0;  // stable letters only: +1 or -1

  static Syllable factor(FactorTag t, E g) {
    Syllable s;
    s.kind = Kind::factor;
    s.tag = t;
    s.payload = std::move(g);
    return s;
  }
  static Syllable stable(int e) {
    Syllable s;
    s.kind = Kind::stable;
    s.exp = e;
    return s;
  }
  bool is_stable() const { return kind == Kind::stable; }
};

// A word in L_stage (or, when hnn is set, in the HNN extension of that
// amalgam whose stable letter centralizes the edge subgroup G_{stage-1}).
template <class Sys>
struct GroupWord {
  using Elem = typename Sys::Elem;

  int stage = 1;
  bool hnn = false;
  std::vector<Syllable<Elem>> syls;

  static GroupWord one(int stage, bool hnn = false) { return GroupWord{stage, hnn, {}}; }
  static GroupWord factor(int stage, FactorTag tag, Elem g, bool hnn = false) {
    return GroupWord{stage, hnn, {Syllable<Elem>::factor(tag, std::move(g))}};
  }
  static GroupWord stable_letter(int stage, int exp) {
    return GroupWord{stage, true, {Syllable<Elem>::stable(exp)}};
  }

  std::size_t length() const { return syls.size(); }
};

namespace detail {

template <class Sys>
void check_stage(const Sys& sys, const GroupWord<Sys>& w) {
  if (w.stage < 1 || w.stage - 1 > sys.depth())
    throw std::invalid_argument("GroupWord: stage has no edge subgroup in this system");
}

template <class Sys>
void check_same_context(const GroupWord<Sys>& u, const GroupWord<Sys>& w) {
  if (u.stage != w.stage || u.hnn != w.hnn)
    throw std::invalid_argument("GroupWord: stage mismatch");
}

}  // namespace detail

// Confluent reduction: merge adjacent same-tag syllables, rewrite syllables
// lying in the edge subgroup into the neighboring factor (the copy-tag
// identification g = beta_i(g)), and apply Britton pinches t^e g t^{-e} -> g
// for g in the associated subgroup.  The result is empty, a single syllable,
// or an alternating word with no factor syllable in the edge subgroup and no
// pinchable stable-letter pattern.
//
// Absorption policy (fixed so the reduced word is schedule-independent): an
// edge-subgroup syllable takes the tag of its left factor neighbour when one
// exists, otherwise it is handed to a right factor neighbour outside the
// edge subgroup; a lone edge-subgroup syllable is tagged into the base
// factor.
template <class Sys>
GroupWord<Sys> reduce(const Sys& sys, const GroupWord<Sys>& w) {
  detail::check_stage(sys, w);
  using Syl = Syllable<typename Sys::Elem>;
  const int edge = w.stage - 1;
  std::vector<Syl> st;

  auto push_factor = [&](FactorTag tag, typename Sys::Elem g) {
    while (true) {
      if (sys.is_identity(g)) return;
      if (st.empty() || st.back().is_stable()) {
        st.push_back(Syl::factor(tag, std::move(g)));
        return;
      }
      Syl& top = st.back();
      if (top.tag == tag) {
        typename Sys::Elem merged = sys.mul(top.payload, g);
        st.pop_back();
        g = std::move(merged);
        continue;
      }
      if (sys.in_level(g, edge)) {
        tag = top.tag;  // identified across the edge; merge on the next pass
        continue;
      }
      if (sys.in_level(top.payload, edge)) {
        typename Sys::Elem merged = sys.mul(top.payload, g);
        st.pop_back();
        g = std::move(merged);
        continue;  // tag stays with the incoming syllable
      }
      st.push_back(Syl::factor(tag, std::move(g)));
      return;
    }
  };

  auto push_stable = [&](int e) {
    if (!st.empty() && st.back().is_stable() && st.back().exp == -e) {
      st.pop_back();
      return;
    }
    if (st.size() >= 2 && !st.back().is_stable() && sys.in_level(st.back().payload, edge) &&
        st[st.size() - 2].is_stable() && st[st.size() - 2].exp == -e) {
      Syl g = st.back();
      st.pop_back();
      st.pop_back();
      push_factor(g.tag, std::move(g.payload));
      return;
    }
    st.push_back(Syl::stable(e));
  };

  for (const Syl& s : w.syls) {
    if (s.is_stable()) {
      if (!w.hnn) throw std::invalid_argument("GroupWord: stable letter outside HNN context");
      push_stable(s.exp);
    } else {
      push_factor(s.tag, s.payload);
    }
  }

  // A lone edge-subgroup syllable is canonically tagged into the base factor.
  if (st.size() == 1 && !st[0].is_stable() && st[0].tag == FactorTag::copy &&
      sys.in_level(st[0].payload, edge))
    st[0].tag = FactorTag::base;

  return GroupWord<Sys>{w.stage, w.hnn, std::move(st)};
}

template <class Sys>
GroupWord<Sys> inverse(const Sys& sys, const GroupWord<Sys>& w) {
  GroupWord<Sys> out{w.stage, w.hnn, {}};
  out.syls.reserve(w.syls.size());
  for (auto it = w.syls.rbegin(); it != w.syls.rend(); ++it) {
    if (it->is_stable())
      out.syls.push_back(Syllable<typename Sys::Elem>::stable(-it->exp));
    else
      out.syls.push_back(
          Syllable<typename Sys::Elem>::factor(it->tag, sys.inverse(it->payload)));
  }
  return out;
}

template <class Sys>
GroupWord<Sys> mul(const Sys& sys, const GroupWord<Sys>& u, const GroupWord<Sys>& w) {
  detail::check_same_context(u, w);
  GroupWord<Sys> cat{u.stage, u.hnn, u.syls};
  cat.syls.insert(cat.syls.end(), w.syls.begin(), w.syls.end());
  return reduce(sys, cat);
}

template <class Sys>
bool is_identity(const Sys& sys, const GroupWord<Sys>& w) {
  return reduce(sys, w).syls.empty();
}

template <class Sys>
bool equal(const Sys& sys, const GroupWord<Sys>& u, const GroupWord<Sys>& w) {
  return is_identity(sys, mul(sys, u, inverse(sys, w)));
}

// True iff the reduced form lies in the given factor (at most one syllable,
// counting edge-subgroup values as members of both factors).
template <class Sys>
bool in_factor(const Sys& sys, const GroupWord<Sys>& w, FactorTag tag) {
  GroupWord<Sys> r = reduce(sys, w);
  if (r.syls.empty()) return true;
  if (r.syls.size() != 1 || r.syls[0].is_stable()) return false;
  return r.syls[0].tag == tag || sys.in_level(r.syls[0].payload, w.stage - 1);
}

// When the reduced form lies in the edge subgroup G_{stage-1}, returns its
// value as an element of the underlying group.
template <class Sys>
std::optional<typename Sys::Elem> edge_value(const Sys& sys, const GroupWord<Sys>& w) {
  GroupWord<Sys> r = reduce(sys, w);
  if (r.syls.empty()) return sys.identity();
  if (r.syls.size() == 1 && !r.syls[0].is_stable() &&
      sys.in_level(r.syls[0].payload, w.stage - 1))
    return r.syls[0].payload;
  return std::nullopt;
}

struct OrderProbe {
  bool exact = false;
  long order = 0;  // exact order, or the largest power checked
  std::string str() const {
    return exact ? "order = " + std::to_string(order) : "order > " + std::to_string(order);
  }
};

// Largest k <= max_pow with w^k != 1 (reported as a lower bound), or the
// exact order when the identity is reached.
template <class Sys>
OrderProbe order_probe(const Sys& sys, const GroupWord<Sys>& w, long max_pow) {
  GroupWord<Sys> acc = reduce(sys, w);
  if (acc.syls.empty()) return OrderProbe{true, 1};
  for (long k = 1; k <= max_pow; ++k) {
    if (acc.syls.empty()) return OrderProbe{true, k};
    acc = mul(sys, acc, w);
  }
  return OrderProbe{false, max_pow};
}

// { g in G_n : t g t^-1 reduces into the base factor and its value lies in
// G_n }.  Britton's lemma makes this the computable face of
// G_n cap G_n^t = G_{n-1}; requires an enumerable system.
template <class Sys>
std::vector<typename Sys::Elem> intersection_scan(const Sys& sys, int stage, int n) {
  static_assert(Sys::is_finite, "intersection_scan needs an enumerable system");
  std::vector<typename Sys::Elem> out;
  GroupWord<Sys> t = GroupWord<Sys>::stable_letter(stage, 1);
  GroupWord<Sys> tinv = GroupWord<Sys>::stable_letter(stage, -1);
  for (const auto& g : sys.level_elements(n)) {
    GroupWord<Sys> conj =
        mul(sys, mul(sys, t, GroupWord<Sys>::factor(stage, FactorTag::base, g, true)), tinv);
    if (!in_factor(sys, conj, FactorTag::base)) continue;
    if (conj.syls.empty()) {
      out.push_back(g);
      continue;
    }
    if (conj.syls.size() == 1 && !conj.syls[0].is_stable() &&
        sys.in_level(conj.syls[0].payload, n))
      out.push_back(g);
  }
  return out;
}

template <class Sys>
nlohmann::json word_json(const Sys& sys, const GroupWord<Sys>& w) {
  nlohmann::json syls = nlohmann::json::array();
  for (const auto& s : w.syls) {
    if (s.is_stable())
      syls.push_back({{"tag", "t"}, {"exp", s.exp}});
    else
      syls.push_back({{"tag", s.tag == FactorTag::base ? "M" : "M_i"},
                      {"payload", sys.elem_json(s.payload)}});
  }
  return nlohmann::json{{"stage", w.stage}, {"syllables", syls}};
}

template <class Sys>
std::string word_str(const Sys& sys, const GroupWord<Sys>& w) {
  if (w.syls.empty()) return "1";
  std::string out;
  for (const auto& s : w.syls) {
    if (!out.empty()) out += " . ";
    if (s.is_stable())
      out += s.exp > 0 ? "t" : "t^-1";
    else
      out += (s.tag == FactorTag::base ? "[M: " : "[M_i: ") + sys.elem_str(s.payload) + "]";
  }
  return out;
}

}  // namespace treefold
