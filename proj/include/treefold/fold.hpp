#pragma once

#include <random>

#include "treefold/check_report.hpp"
#include "treefold/tree.hpp"
#include "treefold/word.hpp"

namespace treefold {

// The stage morphism (group homomorphism L_i -> L_{i+1} together with the
// point-level tree map T_i -> T_{i+1}).  On words it is syllable-wise: base
// syllables are kept, copy syllables h become a_i-conjugates in the next
// copy.  On the tree it subdivides each edge at its midpoint and maps the two
// halves onto the two stage-(i+1) edges meeting at the new middle vertex.

template <class Sys>
GroupWord<Sys> fold_word(const Sys& sys, const GroupWord<Sys>& w) {
  if (w.hnn) throw std::invalid_argument("fold_word: HNN words are not folded");
  if (w.stage > sys.depth()) throw std::invalid_argument("fold_word: no conjugator at this stage");
  using Syl = Syllable<typename Sys::Elem>;
  typename Sys::Elem a = sys.level_conjugator(w.stage);
  GroupWord<Sys> out{w.stage + 1, false, {}};
  out.syls.reserve(3 * w.syls.size());
  for (const Syl& s : w.syls) {
    if (s.is_stable()) throw std::invalid_argument("fold_word: stable letter in amalgam word");
    if (s.tag == FactorTag::base) {
      out.syls.push_back(s);
    } else {
      out.syls.push_back(Syl::factor(FactorTag::copy, a));
      out.syls.push_back(Syl::factor(FactorTag::base, s.payload));
      out.syls.push_back(Syl::factor(FactorTag::copy, sys.inverse(a)));
    }
  }
  return reduce(sys, out);
}

template <class Sys>
GroupWord<Sys> fold_word_to(const Sys& sys, GroupWord<Sys> w, int target_stage) {
  while (w.stage < target_stage) w = fold_word(sys, w);
  if (w.stage != target_stage) throw std::invalid_argument("fold_word_to: target below stage");
  return w;
}

template <class Sys>
TreeVertex<Sys> fold_vertex(const Sys& sys, const TreeVertex<Sys>& v) {
  GroupWord<Sys> rep = fold_word(sys, v.rep);
  if (v.side == FactorTag::copy) {
    GroupWord<Sys> a =
        GroupWord<Sys>::factor(v.stage + 1, FactorTag::copy, sys.level_conjugator(v.stage));
    rep = mul(sys, rep, a);
  }
  return TreeVertex<Sys>{v.stage + 1, FactorTag::base, std::move(rep)};
}

template <class Sys>
TreeVertex<Sys> fold_vertex_to(const Sys& sys, TreeVertex<Sys> v, int target_stage) {
  while (v.stage < target_stage) v = fold_vertex(sys, v);
  if (v.stage != target_stage) throw std::invalid_argument("fold_vertex_to: target below stage");
  return v;
}

// Images of the two halves of an edge: the first half lands on
// phi(x)*G_i, the second on phi(x)*a_i*G_i (sharing the middle vertex).
template <class Sys>
std::pair<TreeEdge<Sys>, TreeEdge<Sys>> fold_edge_halves(const Sys& sys, const TreeEdge<Sys>& e) {
  GroupWord<Sys> rep = fold_word(sys, e.rep);
  GroupWord<Sys> a =
      GroupWord<Sys>::factor(e.stage + 1, FactorTag::copy, sys.level_conjugator(e.stage));
  return {TreeEdge<Sys>{e.stage + 1, rep}, TreeEdge<Sys>{e.stage + 1, mul(sys, rep, a)}};
}

template <class Sys>
TreePoint<Sys> fold_point(const Sys& sys, const TreePoint<Sys>& p) {
  const Dyadic len = edge_length(p.edge.stage);
  const Dyadic half = len.halve();
  auto [first, second] = fold_edge_halves(sys, p.edge);
  if (p.t <= half) return TreePoint<Sys>{first, p.t};
  return TreePoint<Sys>{second, len - p.t};
}

template <class Sys>
TreePoint<Sys> fold_point_to(const Sys& sys, TreePoint<Sys> p, int target_stage) {
  while (p.edge.stage < target_stage) p = fold_point(sys, p);
  if (p.edge.stage != target_stage) throw std::invalid_argument("fold_point_to: target below stage");
  return p;
}

// Length of the overlap of two arcs [a,b], [c,d] in a tree, from the six
// pairwise distances: half the excess of d(a,b)+d(c,d) over the smallest
// endpoint pairing, clamped at zero.
inline Dyadic arc_overlap(const Dyadic& d_ab, const Dyadic& d_cd, const Dyadic& d_ac,
                          const Dyadic& d_ad, const Dyadic& d_bc, const Dyadic& d_bd) {
  Dyadic cross = min(d_ac + d_bd, d_ad + d_bc);
  Dyadic excess = d_ab + d_cd - cross;
  if (excess.is_negative()) return Dyadic::zero();
  return excess.halve();
}

// Overlap length of the stage-j images of two stage-i edges.
template <class Sys>
Dyadic image_overlap(const Sys& sys, const TreeEdge<Sys>& a, const TreeEdge<Sys>& b, int j) {
  TreeVertex<Sys> am = fold_vertex_to(sys, endpoint(a, FactorTag::base), j);
  TreeVertex<Sys> ap = fold_vertex_to(sys, endpoint(a, FactorTag::copy), j);
  TreeVertex<Sys> bm = fold_vertex_to(sys, endpoint(b, FactorTag::base), j);
  TreeVertex<Sys> bp = fold_vertex_to(sys, endpoint(b, FactorTag::copy), j);
  return arc_overlap(vertex_distance(sys, am, ap), vertex_distance(sys, bm, bp),
                     vertex_distance(sys, am, bm), vertex_distance(sys, am, bp),
                     vertex_distance(sys, ap, bm), vertex_distance(sys, ap, bp));
}

// Stages j in (stage, j_max] at which the overlap of the image arcs strictly
// grows; foldings between two fixed edges happen at no more than four stages.
template <class Sys>
std::vector<int> fold_growth_stages(const Sys& sys, const TreeEdge<Sys>& a, const TreeEdge<Sys>& b,
                                    int j_max) {
  std::vector<int> stages;
  Dyadic prev = image_overlap(sys, a, b, a.stage);
  for (int j = a.stage + 1; j <= j_max; ++j) {
    Dyadic cur = image_overlap(sys, a, b, j);
    if (prev < cur) stages.push_back(j);
    prev = cur;
  }
  return stages;
}

namespace detail {

template <class Sys>
void count_sample(CheckReport& rep, bool ok, const Sys& sys, const char* clause,
                  const GroupWord<Sys>& witness) {
  ++rep.samples;
  if (!ok) {
    rep.status = CheckStatus::FAIL;
    rep.witnesses.push_back({{"clause", clause}, {"element", word_json(sys, witness)}});
  }
}

}  // namespace detail

// Checks the fold-summary properties at stage i:
//  (1) stabilizers of the three image vertices,
//  (2) stabilizers of the two image edges and their distinctness,
//  (3)/(4) the edge identification laws on both factors, both directions.
template <class Sys>
CheckReport check_morph_summary(const Sys& sys, int i, int samples, std::uint64_t seed) {
  CheckReport rep;
  rep.check = "morph_summary";
  rep.params = {{"system", sys.name()}, {"i", i}};
  rep.seed = seed;
  rep.status = CheckStatus::PASS;
  std::mt19937_64 rng(seed);

  const int j = i + 1;
  using W = GroupWord<Sys>;
  TreeEdge<Sys> e = fundamental_edge<Sys>(i);
  auto [e1, e2] = fold_edge_halves(sys, e);
  TreeVertex<Sys> x_img = fold_vertex(sys, endpoint(e, FactorTag::base));
  TreeVertex<Sys> y_img = fold_vertex(sys, endpoint(e, FactorTag::copy));
  TreeVertex<Sys> mid = endpoint(e1, FactorTag::copy);  // image of the midpoint

  typename Sys::Elem a = sys.level_conjugator(i);
  W aw = W::factor(j, FactorTag::copy, a);

  auto base_word = [&](const typename Sys::Elem& g) { return W::factor(j, FactorTag::base, g); };
  auto copy_word = [&](const typename Sys::Elem& g) { return W::factor(j, FactorTag::copy, g); };
  auto sample_outside_level = [&](std::mt19937_64& r) {
    for (int attempt = 0; attempt < 4096; ++attempt) {
      typename Sys::Elem g = sys.sample(r);
      if (!sys.in_level(g, i)) return g;
    }
    throw std::runtime_error("check_morph_summary: no sample outside G_i");
  };

  for (int n = 0; n < samples; ++n) {
    typename Sys::Elem m = sys.sample(rng);
    typename Sys::Elem gi = sys.sample_level(i, rng);
    typename Sys::Elem gprev = sys.sample_level(i - 1, rng);

    // (1) St(phi(x)) = M: members fix, and the copy factor only meets it in
    // the edge subgroup.
    detail::count_sample(rep, vertex_stabilizer_contains(sys, x_img, base_word(m)), sys,
                         "morph1.x-member", base_word(m));
    bool copy_fixes_x = vertex_stabilizer_contains(sys, x_img, copy_word(m));
    detail::count_sample(rep, copy_fixes_x == sys.in_level(m, i), sys, "morph1.x-copy", copy_word(m));
    // St(v) = M_{i+1}.
    detail::count_sample(rep, vertex_stabilizer_contains(sys, mid, copy_word(m)), sys,
                         "morph1.mid-member", copy_word(m));
    bool base_fixes_mid = vertex_stabilizer_contains(sys, mid, base_word(m));
    detail::count_sample(rep, base_fixes_mid == sys.in_level(m, i), sys, "morph1.mid-base",
                         base_word(m));
    // St(phi(y)) = M^{a}: the a-conjugates of base syllables fix phi(y).
    W conj_m = mul(sys, mul(sys, aw, base_word(m)), inverse(sys, aw));
    detail::count_sample(rep, vertex_stabilizer_contains(sys, y_img, conj_m), sys,
                         "morph1.y-member", conj_m);

    // (2) St(e1) = G_i, St(e2) = a G_i a^{-1} (inside the copy factor).
    detail::count_sample(rep, edge_stabilizer_contains(sys, e1, base_word(gi)), sys,
                         "morph2.e1-member", base_word(gi));
    bool e1_has_m = edge_stabilizer_contains(sys, e1, base_word(m));
    detail::count_sample(rep, e1_has_m == sys.in_level(m, i), sys, "morph2.e1-nonmember",
                         base_word(m));
    W conj_gi = mul(sys, mul(sys, aw, copy_word(gi)), inverse(sys, aw));
    detail::count_sample(rep, edge_stabilizer_contains(sys, e2, conj_gi), sys, "morph2.e2-member",
                         conj_gi);
    bool e2_has_m = edge_stabilizer_contains(sys, e2, copy_word(m));
    bool m_in_conj = sys.in_level(sys.mul(sys.mul(sys.inverse(a), m), a), i);
    detail::count_sample(rep, e2_has_m == m_in_conj, sys, "morph2.e2-nonmember", copy_word(m));

    // (3) phi(e1) = phi(c . e1) iff c in G_i, for c in M \ G_{i-1}.
    {
      typename Sys::Elem c = sys.sample_level(i, rng, /*proper=*/true);
      TreeEdge<Sys> moved{i, W::factor(i, FactorTag::base, c)};
      auto [c1, c2] = fold_edge_halves(sys, moved);
      detail::count_sample(rep, edge_equal(sys, e1, c1), sys, "morph3.identified",
                           W::factor(i, FactorTag::base, c));
      typename Sys::Elem out = sample_outside_level(rng);
      TreeEdge<Sys> far{i, W::factor(i, FactorTag::base, out)};
      auto [f1, f2] = fold_edge_halves(sys, far);
      detail::count_sample(rep, !edge_equal(sys, e1, f1), sys, "morph3.distinct",
                           W::factor(i, FactorTag::base, out));
    }
    // (4) the copy-side law: phi(e2) = phi(c . e2) iff c in beta_i(G_i).
    {
      typename Sys::Elem c = sys.sample_level(i, rng, /*proper=*/true);
      TreeEdge<Sys> moved{i, W::factor(i, FactorTag::copy, c)};
      auto [c1, c2] = fold_edge_halves(sys, moved);
      detail::count_sample(rep, edge_equal(sys, e2, c2), sys, "morph4.identified",
                           W::factor(i, FactorTag::copy, c));
      typename Sys::Elem out = sample_outside_level(rng);
      TreeEdge<Sys> far{i, W::factor(i, FactorTag::copy, out)};
      auto [f1, f2] = fold_edge_halves(sys, far);
      detail::count_sample(rep, !edge_equal(sys, e2, f2), sys, "morph4.distinct",
                           W::factor(i, FactorTag::copy, out));
    }
  }

  // (2) in particular: the two image edges are distinct.
  if (edge_equal(sys, e1, e2)) {
    rep.status = CheckStatus::FAIL;
    rep.witnesses.push_back({{"clause", "morph2.e1-ne-e2"}});
  }
  ++rep.samples;
  return rep;
}

// Edge-stabilizer transport (St_{L_j}(phi_{ij}(e)) = phi_{ij}(St_{L_i}(e)))
// plus the intersection law G_i cap G_i^{a_i} = G_{i-1}.  The edge defaults
// to the fundamental one; any translate x*G_{i-1} works, with stabilizer
// x G_{i-1} x^-1.
template <class Sys>
CheckReport check_edge_stab(const Sys& sys, int i, int j, int samples, std::uint64_t seed,
                            const TreeEdge<Sys>& e) {
  CheckReport rep;
  rep.check = "edge_stab";
  rep.params = {{"system", sys.name()}, {"i", i}, {"j", j},
                {"edge", word_json(sys, reduce(sys, e.rep))}};
  rep.seed = seed;
  rep.status = CheckStatus::PASS;
  std::mt19937_64 rng(seed);

  using W = GroupWord<Sys>;
  TreeVertex<Sys> em = fold_vertex_to(sys, endpoint(e, FactorTag::base), j);
  TreeVertex<Sys> ep = fold_vertex_to(sys, endpoint(e, FactorTag::copy), j);
  typename Sys::Elem a = sys.level_conjugator(i);
  GroupWord<Sys> x = e.rep;
  GroupWord<Sys> xinv = inverse(sys, x);

  for (int n = 0; n < samples; ++n) {
    // Members of St_{L_i}(e) = x G_{i-1} x^-1 transport to stabilizers of
    // the image.
    typename Sys::Elem g = sys.sample_level(i - 1, rng);
    W member = mul(sys, mul(sys, x, W::factor(i, FactorTag::base, g)), xinv);
    W img = fold_word_to(sys, member, j);
    bool fixes = vertex_stabilizer_contains(sys, em, img) &&
                 vertex_stabilizer_contains(sys, ep, img);
    detail::count_sample(rep, fixes, sys, "transport-member", img);

    // Conjugates of G_i \ G_{i-1} do not stabilize the whole image.
    if (j > i) {
      typename Sys::Elem c = sys.sample_level(i, rng, /*proper=*/true);
      W out = mul(sys, mul(sys, x, W::factor(i, FactorTag::base, c)), xinv);
      W cimg = fold_word_to(sys, out, j);
      bool cfixes = vertex_stabilizer_contains(sys, em, cimg) &&
                    vertex_stabilizer_contains(sys, ep, cimg);
      detail::count_sample(rep, !cfixes, sys, "transport-nonmember", cimg);
    }

    // Pointwise intersection law at stage i.
    auto check_law = [&](const typename Sys::Elem& h) {
      bool lhs = sys.in_level(h, i) &&
                 sys.in_level(sys.mul(sys.mul(sys.inverse(a), h), a), i);
      bool rhs = sys.in_level(h, i - 1);
      detail::count_sample(rep, lhs == rhs, sys, "intersection-law",
                           W::factor(i, FactorTag::base, h));
    };
    check_law(sys.sample(rng));
    check_law(sys.sample_level(i, rng));
    check_law(sys.sample_level(i - 1, rng));
  }
  return rep;
}

template <class Sys>
CheckReport check_edge_stab(const Sys& sys, int i, int j, int samples, std::uint64_t seed) {
  return check_edge_stab(sys, i, j, samples, seed, fundamental_edge<Sys>(i));
}

// Sampled verification of the defining properties of the stage map: it is a
// homomorphism, restricts injectively to both factors, fixes the base copy,
// and carries the other copy onto the a_i-conjugate of the base; on the edge
// subgroup the two factor images agree.
template <class Sys>
CheckReport check_fold_props(const Sys& sys, int i, int samples, std::uint64_t seed) {
  CheckReport rep;
  rep.check = "fold_props";
  rep.params = {{"system", sys.name()}, {"i", i}};
  rep.seed = seed;
  rep.status = CheckStatus::PASS;
  std::mt19937_64 rng(seed);

  using W = GroupWord<Sys>;
  const int j = i + 1;
  typename Sys::Elem a = sys.level_conjugator(i);
  W aw = W::factor(j, FactorTag::copy, a);

  for (int n = 0; n < samples; ++n) {
    typename Sys::Elem g = sys.sample(rng);
    typename Sys::Elem h = sys.sample(rng);

    // base copy is fixed elementwise
    W bg = fold_word(sys, W::factor(i, FactorTag::base, g));
    detail::count_sample(rep, equal(sys, bg, W::factor(j, FactorTag::base, g)), sys,
                         "fixes-base", bg);

    // the other copy lands in the a_i-conjugate of the base copy
    W ch = fold_word(sys, W::factor(i, FactorTag::copy, h));
    W conj = mul(sys, mul(sys, aw, W::factor(j, FactorTag::base, h)), inverse(sys, aw));
    detail::count_sample(rep, equal(sys, ch, conj), sys, "copy-conjugated", ch);

    // injectivity on each factor
    bool base_inj = sys.equal(g, h) ||
                    !equal(sys, bg, fold_word(sys, W::factor(i, FactorTag::base, h)));
    detail::count_sample(rep, base_inj, sys, "injective-on-base", bg);
    bool copy_inj = sys.equal(g, h) ||
                    !equal(sys, ch, fold_word(sys, W::factor(i, FactorTag::copy, g)));
    detail::count_sample(rep, copy_inj, sys, "injective-on-copy", ch);

    // well-defined on the amalgamated subgroup: both copies of an edge
    // element have the same image
    typename Sys::Elem c = sys.sample_level(i - 1, rng);
    W from_base = fold_word(sys, W::factor(i, FactorTag::base, c));
    W from_copy = fold_word(sys, W::factor(i, FactorTag::copy, c));
    detail::count_sample(rep, equal(sys, from_base, from_copy), sys, "edge-agreement",
                         from_copy);

    // homomorphism on random two-syllable products
    W u = mul(sys, W::factor(i, FactorTag::base, g), W::factor(i, FactorTag::copy, h));
    W w = mul(sys, W::factor(i, FactorTag::copy, c), W::factor(i, FactorTag::base, h));
    detail::count_sample(
        rep,
        equal(sys, fold_word(sys, mul(sys, u, w)),
              mul(sys, fold_word(sys, u), fold_word(sys, w))),
        sys, "homomorphism", u);

    // generators of the next copy are reached: g in G_i equals its copy, and
    // the a_i-conjugate of the copy is the image of the copy syllable
    typename Sys::Elem gi = sys.sample_level(i, rng);
    detail::count_sample(rep,
                         equal(sys, fold_word(sys, W::factor(i, FactorTag::base, gi)),
                               W::factor(j, FactorTag::copy, gi)),
                         sys, "next-copy-level", W::factor(j, FactorTag::copy, gi));
    W conj_gi = mul(sys, mul(sys, aw, W::factor(j, FactorTag::copy, gi)), inverse(sys, aw));
    detail::count_sample(rep,
                         equal(sys, fold_word(sys, W::factor(i, FactorTag::copy, gi)), conj_gi),
                         sys, "next-copy-conjugate", conj_gi);
  }
  return rep;
}

}  // namespace treefold
