#include "treefold/thompson.hpp"

#include <deque>
#include <stdexcept>

namespace treefold {
namespace thompson {

namespace {

Dyadic dy(std::int64_t n, int e) { return Dyadic(n, e); }
DyadicInterval iv(Dyadic lo, Dyadic hi) { return DyadicInterval(lo, hi); }

VElement from_table(std::vector<std::pair<DyadicInterval, DyadicInterval>> t) {
  std::vector<AffinePiece> pieces;
  pieces.reserve(t.size());
  for (auto& [s, d] : t) pieces.push_back(make_piece(s, d));
  return VElement(PLMap(std::move(pieces)));
}

}  // namespace

VElement gen_a() {
  return from_table({
      {iv(dy(0, 0), dy(1, 1)), iv(dy(0, 0), dy(1, 2))},
      {iv(dy(1, 1), dy(3, 2)), iv(dy(1, 2), dy(1, 1))},
      {iv(dy(3, 2), dy(1, 0)), iv(dy(1, 1), dy(1, 0))},
  });
}

VElement gen_b() {
  return from_table({
      {iv(dy(0, 0), dy(1, 1)), iv(dy(0, 0), dy(1, 1))},
      {iv(dy(1, 1), dy(3, 2)), iv(dy(1, 1), dy(5, 3))},
      {iv(dy(3, 2), dy(7, 3)), iv(dy(5, 3), dy(3, 2))},
      {iv(dy(7, 3), dy(1, 0)), iv(dy(3, 2), dy(1, 0))},
  });
}

VElement gen_c() {
  return from_table({
      {iv(dy(0, 0), dy(1, 1)), iv(dy(3, 2), dy(1, 0))},
      {iv(dy(1, 1), dy(3, 2)), iv(dy(0, 0), dy(1, 1))},
      {iv(dy(3, 2), dy(1, 0)), iv(dy(1, 1), dy(3, 2))},
  });
}

VElement gen_pi0() {
  return from_table({
      {iv(dy(0, 0), dy(1, 1)), iv(dy(1, 1), dy(3, 2))},
      {iv(dy(1, 1), dy(3, 2)), iv(dy(0, 0), dy(1, 1))},
      {iv(dy(3, 2), dy(1, 0)), iv(dy(3, 2), dy(1, 0))},
  });
}

VElement generator(const std::string& name) {
  if (name == "A") return gen_a();
  if (name == "B") return gen_b();
  if (name == "C") return gen_c();
  if (name == "pi0") return gen_pi0();
  throw std::invalid_argument("unknown generator: " + name);
}

DyadicInterval level_interval(int i) {
  if (i < 0) throw std::invalid_argument("level_interval: i >= 0 required");
  return iv(dy(0, 0), Dyadic::pow2(-(i + 1)));
}

DyadicInterval swapped_level_interval(int i) {
  return iv(Dyadic::pow2(-(i + 1)), Dyadic::pow2(-i));
}

bool in_level(const VElement& g, int i) { return g.fixes_pointwise(level_interval(i)); }

VElement swap_halves(const DyadicInterval& range) {
  Dyadic mid = (range.lo + range.hi).halve();
  std::vector<AffinePiece> pieces;
  pieces.push_back(make_piece(iv(range.lo, mid), iv(mid, range.hi)));
  pieces.push_back(make_piece(iv(mid, range.hi), iv(range.lo, mid)));
  if (!range.lo.is_zero())
    pieces.push_back(AffinePiece{iv(Dyadic::zero(), range.lo), iv(Dyadic::zero(), range.lo), 0});
  if (range.hi < Dyadic::one())
    pieces.push_back(AffinePiece{iv(range.hi, Dyadic::one()), iv(range.hi, Dyadic::one()), 0});
  return VElement(PLMap(std::move(pieces)));
}

VElement level_swap(int i) {
  if (i < 1) throw std::invalid_argument("level_swap: i >= 1 required");
  return swap_halves(iv(Dyadic::zero(), Dyadic::pow2(-i)));
}

namespace {

// Subtract a set of intervals from [0,1); returns the maximal gaps, sorted.
std::vector<DyadicInterval> complement(std::vector<DyadicInterval> used) {
  std::sort(used.begin(), used.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < used.size(); ++i)
    if (used[i].lo < used[i - 1].hi)
      throw std::invalid_argument("transporter: overlapping constraint intervals");
  std::vector<DyadicInterval> out;
  Dyadic at = Dyadic::zero();
  for (const DyadicInterval& u : used) {
    if (at < u.lo) out.push_back(iv(at, u.lo));
    at = u.hi;
  }
  if (at < Dyadic::one()) out.push_back(iv(at, Dyadic::one()));
  return out;
}

std::deque<DyadicInterval> to_standard_queue(const std::vector<DyadicInterval>& gaps) {
  std::deque<DyadicInterval> q;
  for (const DyadicInterval& g : gaps)
    for (const DyadicInterval& p : standard_pieces(g)) q.push_back(p);
  return q;
}

// Split the largest piece (leftmost among ties) at its dyadic midpoint.
void split_largest(std::deque<DyadicInterval>& q) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < q.size(); ++i)
    if (q[best].length() < q[i].length()) best = i;
  DyadicInterval piece = q[best];
  Dyadic mid = (piece.lo + piece.hi).halve();
  q[best] = iv(piece.lo, mid);
  q.insert(q.begin() + static_cast<std::ptrdiff_t>(best) + 1, iv(mid, piece.hi));
}

}  // namespace

VElement transporter(const DyadicInterval& from, const DyadicInterval& to,
                     const std::vector<DyadicInterval>& fix) {
  for (const DyadicInterval& f : fix) {
    if (!disjoint(f, from) || !disjoint(f, to))
      throw std::invalid_argument("transporter: fix overlaps from/to");
  }
  std::vector<AffinePiece> pieces;
  pieces.push_back(make_piece(from, to));  // throws if the ratio is not 2^k
  for (const DyadicInterval& f : fix) pieces.push_back(AffinePiece{f, f, 0});

  std::vector<DyadicInterval> dom_used = fix;
  dom_used.push_back(from);
  std::vector<DyadicInterval> ran_used = fix;
  ran_used.push_back(to);
  std::deque<DyadicInterval> dom = to_standard_queue(complement(std::move(dom_used)));
  std::deque<DyadicInterval> ran = to_standard_queue(complement(std::move(ran_used)));

  if (dom.empty() != ran.empty())
    throw std::invalid_argument("transporter: complement measures incompatible");
  while (dom.size() != ran.size()) {
    if (dom.size() < ran.size())
      split_largest(dom);
    else
      split_largest(ran);
  }
  for (std::size_t i = 0; i < dom.size(); ++i) pieces.push_back(make_piece(dom[i], ran[i]));
  return VElement(PLMap(std::move(pieces)));
}

VElement embed_in_level(const VElement& f, int i) {
  // tau_i maps [0,1) onto [s,1), s = 1/2^{i+1}: the k-th dyadic slab of the
  // domain is sent to [2^k s, 2^{k+1} s).
  std::vector<AffinePiece> tau;
  Dyadic s = Dyadic::pow2(-(i + 1));
  for (int k = 0; k < i; ++k) {
    DyadicInterval src(Dyadic::one() - Dyadic::pow2(-k), Dyadic::one() - Dyadic::pow2(-k - 1));
    DyadicInterval dst(s.mul_pow2(k), s.mul_pow2(k + 1));
    tau.push_back(make_piece(src, dst));
  }
  tau.push_back(make_piece(iv(Dyadic::one() - Dyadic::pow2(-i), Dyadic::one()),
                           iv(dy(1, 1), Dyadic::one())));
  PLMap t(std::move(tau));

  std::vector<AffinePiece> pieces = compose(t, compose(f.table(), t.inverse())).pieces();
  pieces.push_back(AffinePiece{level_interval(i), level_interval(i), 0});
  return VElement(PLMap(std::move(pieces)));
}

GenerationWitness generation_witness(int i) {
  if (i < 1) throw std::invalid_argument("generation_witness: i >= 1 required");
  GenerationWitness w;
  w.level = i;
  const DyadicInterval target = swapped_level_interval(i);
  const std::vector<DyadicInterval> fix = {level_interval(i)};
  const VElement A = gen_a(), B = gen_b(), C = gen_c(), Pi = gen_pi0();

  // B already stabilizes [0,1/2).
  w.b = {{WitnessTag::level, B}};

  // pi0 stabilizes [3/4,1): conjugate that stabilizer onto the swapped slab.
  VElement d1 = transporter(iv(dy(3, 2), dy(1, 0)), target, fix);
  w.pi0 = {{WitnessTag::level, d1.inverse()},
           {WitnessTag::level_conjugate, conjugate(Pi, d1)},
           {WitnessTag::level, d1}};

  // A = B * (B^-1 A), with B^-1 A in St([7/8,1)).
  VElement d2 = transporter(iv(dy(7, 3), dy(1, 0)), target, fix);
  w.a = {{WitnessTag::level, B},
         {WitnessTag::level, d2.inverse()},
         {WitnessTag::level_conjugate, conjugate(compose(B.inverse(), A), d2)},
         {WitnessTag::level, d2}};

  // C = pi0 * (pi0^-1 C), with pi0^-1 C in St([1/2,3/4)).
  VElement d3 = transporter(iv(dy(1, 1), dy(3, 2)), target, fix);
  w.c = w.pi0;
  w.c.push_back({WitnessTag::level, d3.inverse()});
  w.c.push_back({WitnessTag::level_conjugate, conjugate(compose(Pi.inverse(), C), d3)});
  w.c.push_back({WitnessTag::level, d3});
  return w;
}

namespace {

bool letter_ok(const WitnessLetter& l, int i) {
  if (l.tag == WitnessTag::level) return in_level(l.g, i);
  return in_level(conjugate(l.g, level_swap(i).inverse()), i);
}

bool word_ok(const std::vector<WitnessLetter>& word, const VElement& target, int i) {
  VElement prod = VElement::identity();
  for (const WitnessLetter& l : word) {
    if (!letter_ok(l, i)) return false;
    prod = compose(prod, l.g);
  }
  return prod == target;
}

}  // namespace

bool verify_generation_witness(const GenerationWitness& w) {
  return word_ok(w.a, gen_a(), w.level) && word_ok(w.b, gen_b(), w.level) &&
         word_ok(w.c, gen_c(), w.level) && word_ok(w.pi0, gen_pi0(), w.level);
}

P4Counterexample p4_counterexample(int i) {
  if (i < 1) throw std::invalid_argument("p4_counterexample: i >= 1 required");
  P4Counterexample out;
  out.level = i;
  out.c = swap_halves(iv(dy(3, i + 2), Dyadic::pow2(-i)));
  out.conjugate = conjugate(out.c, level_swap(i));
  out.containment_level = i + 1;
  return out;
}

bool verify_p4_counterexample(const P4Counterexample& w) {
  int i = w.level;
  if (!(in_level(w.c, i) && !in_level(w.c, i - 1))) return false;
  if (w.conjugate != conjugate(w.c, level_swap(i))) return false;
  return in_level(w.conjugate, w.containment_level);
}

VElement random_element(std::uint64_t seed, int depth) {
  std::mt19937_64 rng(seed);
  return random_element(rng, depth);
}

VElement random_element(std::mt19937_64& rng, int depth) {
  if (depth < 0) throw std::invalid_argument("random_element: depth >= 0 required");
  static const std::array<VElement, 4> gens = {gen_a(), gen_b(), gen_c(), gen_pi0()};
  VElement out = VElement::identity();
  for (int k = 0; k < depth; ++k)
    out = compose(out, gens[std::uniform_int_distribution<int>(0, 3)(rng)]);
  return out;
}

VElement random_level_element(std::mt19937_64& rng, int i, int depth, bool proper) {
  DyadicInterval half(Dyadic::zero(), dy(1, 1));
  for (int attempt = 0; attempt < 256; ++attempt) {
    VElement f = random_element(rng, depth);
    if (proper && f.fixes_pointwise(half)) continue;  // would land in G_{i-1}
    VElement g = embed_in_level(f, i);
    if (!proper) return g;
    if (i > 0 ? !in_level(g, i - 1) : !g.is_identity()) return g;
  }
  throw std::runtime_error("random_level_element: sampling failed");
}

}  // namespace thompson
}  // namespace treefold
