#include "berkcrucial/crucial.hpp"

#include <algorithm>
#include <set>

namespace berk {

namespace {
QQ fin(const ExtValue& v) { return v.value(); }
}

QQ ordres_direct(const RationalMapRep& f, const BerkPoint& S) {
  if (!S.is_type2()) throw InputError("ordres_direct: type II point required");
  if (S == BerkPoint::gauss(S.context())) return f.vres_min();
  return f.conjugate(gauss_to(S)).vres_min();
}

QQ ordres_via_formula(const RationalMapRep& f, const BerkPoint& S) {
  long d = f.degree();
  return QQ(2 * d * (d - 1)) * crucial_at(f, S) + f.vres_min();
}

QQ crucial_slope(const RationalMapRep& f, const BerkPoint& S,
                 const BerkPoint& toward) {
  SegmentPLF pr = edge_profile(ProfileKind::Crucial, f,
                               BerkPoint::gauss(f.context()), S, toward);
  return pr.slope_from_a();
}

QQ crucial_slope(const RationalMapRep& f, const BerkPoint& S, const P1Fp& v) {
  return crucial_slope(f, S, direction_rep(S, v));
}

QQ wedge_at(const RationalMapRep& f, const BerkPoint& S) {
  if (!S.is_type2()) throw InputError("wedge_at: type II point required");
  BerkPoint up = BerkPoint::type2(S.center(), fin(S.t()) - 1);
  SegmentPLF pr = edge_profile(ProfileKind::Wedge, f,
                               BerkPoint::gauss(f.context()), S, up);
  return pr.value_at(S);
}

std::vector<BerkPoint> fixed_points(const RationalMapRep& f) {
  auto [P, inf_mult] = f.fixed_point_divisor();
  std::vector<BerkPoint> out;
  if (P.deg() >= 1) {
    for (const auto& cl : padic_roots(P))
      out.push_back(BerkPoint::type1(cl.center));
  }
  if (inf_mult > 0) out.push_back(BerkPoint::infinity(f.context()));
  return out;
}

namespace {

// A divisor point destined to become a tree generator.  An approximate
// cluster center cannot serve as a type I vertex: recentering polynomials at
// it does not vanish, so profile tails beyond the certified depth would be
// garbage.  Exact points stay type I; inexact clusters are represented by
// the type II truncation zeta(center; D) at a certified depth D.
struct TreeAnchor {
  TowerElem center;
  bool at_infinity = false;
  bool exact = false;
};

std::vector<TreeAnchor> divisor_anchors(const Poly& P, int inf_mult,
                                        const RootPolicy& pol) {
  std::vector<TreeAnchor> out;
  if (P.deg() >= 1) {
    for (const auto& cl : padic_roots(P, pol)) {
      bool exact = cl.err_t.is_infinity() || P.eval(cl.center).is_zero();
      out.push_back(TreeAnchor{cl.center, false, exact});
    }
  }
  if (inf_mult > 0)
    out.push_back(TreeAnchor{TowerElem::zero(P.context()), true, true});
  return out;
}

// Anchors whose inexact centers are certified through the sentinel depth:
// at every x <= depth the constant line of the recentered polynomial stays
// strictly above the rest of the Newton envelope, so profiles computed on
// [*, depth] cannot see the approximation error.
std::vector<TreeAnchor> certified_anchors(const Poly& P, int inf_mult,
                                          const QQ& depth) {
  RootPolicy pol;
  pol.min_err = depth + 6;
  for (int tries = 0; tries < 5; ++tries) {
    auto anchors = divisor_anchors(P, inf_mult, pol);
    bool ok = true;
    for (const auto& a : anchors) {
      if (a.at_infinity || a.exact) continue;
      Poly q = P.shift(a.center);
      ExtValue v0 = q.coeff(0).val();
      ExtValue rest = ExtValue::infinity();
      for (int j = 1; j <= q.deg(); ++j) {
        ExtValue vj = q.coeff(j).val();
        if (vj.is_infinity()) continue;
        rest = min(rest, ExtValue(vj.value() + QQ(j) * depth));
      }
      if (!(v0 > rest + ExtValue(QQ(1)))) {
        ok = false;
        break;
      }
    }
    if (ok) return anchors;
    pol.min_err = pol.min_err * 2 + 8;
  }
  throw std::logic_error("certified_anchors: could not certify cluster depth");
}

std::vector<BerkPoint> anchor_points(const std::vector<TreeAnchor>& anchors,
                                     const TowerContext& ctx, const QQ& depth) {
  std::vector<BerkPoint> pts;
  for (const auto& a : anchors) {
    if (a.at_infinity)
      pts.push_back(BerkPoint::infinity(ctx));
    else if (a.exact)
      pts.push_back(BerkPoint::type1(a.center));
    else
      pts.push_back(BerkPoint::type2(a.center, depth));
  }
  return pts;
}

// Deepest pairwise meet among the anchors (how far down the tree reaches).
QQ anchor_join_depth(const std::vector<TreeAnchor>& anchors) {
  QQ deep(2);
  for (size_t i = 0; i < anchors.size(); ++i) {
    if (anchors[i].at_infinity) continue;
    ExtValue vc = anchors[i].center.is_zero() ? ExtValue::infinity()
                                              : anchors[i].center.val();
    if (!vc.is_infinity()) deep = std::max(deep, QQ(abs(vc.value())));
    for (size_t j = i + 1; j < anchors.size(); ++j) {
      if (anchors[j].at_infinity) continue;
      TowerElem d = anchors[i].center - anchors[j].center;
      if (d.is_zero()) continue;
      deep = std::max(deep, QQ(abs(d.val().value())));
    }
  }
  return deep;
}

// True when some refined vertex crowds the sentinel depth, i.e. the profile
// still has structure where the truncation was placed.
bool depth_too_shallow(const FiniteTree& refined, const QQ& depth) {
  for (const auto& v : refined.vertices()) {
    if (!v.is_type2()) continue;
    QQ t = v.t().value();
    if (t > depth - 1 && t < depth) return true;
  }
  return false;
}

}  // namespace

FiniteTree crucial_tree(const RationalMapRep& f) {
  if (f.degree() < 2) throw InputError("crucial_tree: degree must be > 1");
  TowerContext ctx = f.context();
  auto [fixpoly, fix_inf] = f.fixed_point_divisor();
  EdgeProfiler crucial_gen = [&](const BerkPoint& A, const BerkPoint& B) {
    return edge_profile(ProfileKind::Crucial, f, BerkPoint::gauss(ctx), A, B);
  };
  std::string last_err = "no candidate worked";
  for (int attempt = 0; attempt < 3; ++attempt) {
    RootPolicy probe_pol;  // shallow pass to gauge the tree's depth
    auto fix_anchors = divisor_anchors(fixpoly, fix_inf, probe_pol);
    // auxiliary non-fixed rational point with computable preimages
    std::vector<TreeAnchor> pre_anchors;
    bool got = false;
    for (long k = 0; k <= 3 * (ctx.p + 1) && !got; ++k) {
      TowerElem a0(ctx, QQ(k));
      if (fixpoly.eval(a0).is_zero()) continue;  // fixed point
      Poly P = f.num() - f.den() * a0;
      if (P.is_zero() || P.deg() < 1) continue;
      try {
        pre_anchors = divisor_anchors(P, f.degree() - P.deg(), probe_pol);
        got = true;
      } catch (const UnsupportedResidueExtension& e) {
        last_err = e.what();
      }
    }
    if (!got)
      throw UnsupportedResidueExtension(
          "crucial_tree: no auxiliary point with F_p-rational preimages (" +
          last_err + ")");
    std::vector<TreeAnchor> all = fix_anchors;
    all.insert(all.end(), pre_anchors.begin(), pre_anchors.end());
    QQ depth = anchor_join_depth(all) + QQ(8 << attempt);
    // re-certify the inexact clusters beyond the sentinel depth
    auto fix_deep = certified_anchors(fixpoly, fix_inf, depth);
    std::vector<BerkPoint> cand = anchor_points(fix_deep, ctx, depth);
    {
      bool pre_ok = false;
      for (long k = 0; k <= 3 * (ctx.p + 1) && !pre_ok; ++k) {
        TowerElem a0(ctx, QQ(k));
        if (fixpoly.eval(a0).is_zero()) continue;
        Poly P = f.num() - f.den() * a0;
        if (P.is_zero() || P.deg() < 1) continue;
        try {
          auto pre_deep = certified_anchors(P, f.degree() - P.deg(), depth);
          auto pts = anchor_points(pre_deep, ctx, depth);
          cand.insert(cand.end(), pts.begin(), pts.end());
          pre_ok = true;
        } catch (const UnsupportedResidueExtension&) {
        }
      }
      if (!pre_ok)
        throw UnsupportedResidueExtension(
            "crucial_tree: auxiliary preimages lost at depth");
    }
    FiniteTree gamma_cand = FiniteTree::span(cand);
    if (gamma_cand.trivial())
      throw std::logic_error("crucial_tree: degenerate candidate tree");
    std::vector<TreePLF> built = build_profiled(gamma_cand, {crucial_gen});
    if (depth_too_shallow(built[0].tree, depth)) continue;
    TreeMeasure nu_cand =
        tree_laplacian(built[0]) + valency_measure(built[0].tree);
    std::vector<BerkPoint> crucial_set;
    for (const auto& [pt, m] : nu_cand.atoms()) {
      if (!(m > 0) || !pt.is_type2()) continue;
      if (pt.t().value() >= depth) continue;  // sentinel artifacts never count
      if (!(map_image(f, pt) == pt)) continue;
      if (local_degree(f, pt) > 1) crucial_set.push_back(pt);
    }
    std::vector<BerkPoint> gens = anchor_points(fix_deep, ctx, depth);
    gens.insert(gens.end(), crucial_set.begin(), crucial_set.end());
    FiniteTree G = FiniteTree::span(gens);
    if (G.trivial())
      throw std::logic_error("crucial_tree: degenerate tree (theory violated)");
    std::vector<TreePLF> check = build_profiled(G, {crucial_gen});
    if (depth_too_shallow(check[0].tree, depth)) continue;
    return G;
  }
  throw std::logic_error(
      "crucial_tree: sentinel depth did not stabilize (deep structure)");
}

namespace {
// Expected (d-1) nu_f({S'}) per the local case formula, relative to the tree.
long expected_weight(const RationalMapRep& f, const FiniteTree& T, int v) {
  const BerkPoint& S = T.vertices()[v];
  if (S.is_type1()) return 0;
  DegreeData dd(f, S);
  if (dd.fixed()) {
    long cnt = 0;
    for (int e : T.incident()[v]) {
      const BerkPoint& nb = T.vertices()[T.other(e, v)];
      P1Fp cls = direction_toward(S, nb);
      if (dd.tangent_image(cls) != cls) ++cnt;
    }
    return dd.local_degree() - 1 + cnt;
  }
  long val = T.valency(v);
  return std::max(0L, val - 2);
}
}  // namespace

CrucialMeasure crucial_measure(const RationalMapRep& f) {
  CrucialMeasure out;
  out.tree = crucial_tree(f);
  TowerContext ctx = f.context();
  out.nu = nu_f_gamma(f, out.tree, BerkPoint::gauss(ctx));
  long d = f.degree();
  // weights and the direct case-formula cross-check
  std::vector<BerkPoint> atom_pts;
  for (const auto& [pt, m] : out.nu.atoms()) atom_pts.push_back(pt);
  FiniteTree refined = out.tree.with_points(atom_pts);
  for (size_t v = 0; v < refined.vertices().size(); ++v) {
    const BerkPoint& S = refined.vertices()[v];
    QQ mass = out.nu.at(S);
    QQ w = mass * QQ(d - 1);
    if (w.get_den() != 1)
      throw std::logic_error("crucial_measure: non-integral weight");
    long wi = static_cast<long>(w.get_num().get_si());
    long expect = expected_weight(f, refined, static_cast<int>(v));
    if (wi != expect)
      throw std::logic_error(
          "crucial_measure: case-formula mismatch at " + S.str() + ": got " +
          std::to_string(wi) + ", expected " + std::to_string(expect));
    if (wi != 0) {
      if (!S.is_type2())
        throw std::logic_error("crucial_measure: weight at a type I point");
      out.weights.emplace_back(S, wi);
    }
  }
  if (out.nu.total() != 1)
    throw std::logic_error("crucial_measure: total mass != 1");
  return out;
}

MinResLocResult minresloc(const RationalMapRep& f) {
  TowerContext ctx = f.context();
  FiniteTree G = crucial_tree(f);
  FiniteTree Gp = G.with_points({BerkPoint::gauss(ctx)});
  EdgeProfiler gen = [&](const BerkPoint& A, const BerkPoint& B) {
    return edge_profile(ProfileKind::Crucial, f, BerkPoint::gauss(ctx), A, B);
  };
  std::vector<TreePLF> built = build_profiled(Gp, {gen});
  const TreePLF& C = built[0];
  const FiniteTree& T = C.tree;
  // exact convex minimization over the profiled tree
  bool have = false;
  QQ best(0);
  std::vector<QQ> vals(T.vertices().size());
  std::vector<bool> is2(T.vertices().size(), false);
  for (size_t v = 0; v < T.vertices().size(); ++v) {
    if (!T.vertices()[v].is_type2()) continue;
    is2[v] = true;
    vals[v] = C.value_at_vertex(static_cast<int>(v));
    if (!have || vals[v] < best) {
      best = vals[v];
      have = true;
    }
  }
  if (!have) throw std::logic_error("minresloc: no type II vertex");
  std::vector<int> q;
  for (size_t v = 0; v < T.vertices().size(); ++v)
    if (is2[v] && vals[v] == best) q.push_back(static_cast<int>(v));
  std::vector<BerkPoint> extremes;
  if (q.size() == 1) {
    extremes.push_back(T.vertices()[q[0]]);
  } else {
    std::set<int> qs(q.begin(), q.end());
    for (int v : q) {
      int qn = 0;
      for (int e : T.incident()[v])
        if (qs.count(T.other(e, v))) ++qn;
      if (qn <= 1) extremes.push_back(T.vertices()[v]);
    }
  }
  if (extremes.empty() || extremes.size() > 2)
    throw std::logic_error("minresloc: locus is not a point or segment");
  // independent route: barycenter of nu_f on Gamma_FR
  TreeMeasure nu = nu_f_gamma(f, G, BerkPoint::gauss(ctx));
  BarycenterResult bc = barycenter(nu, G);
  auto keyset = [](const std::vector<BerkPoint>& pts) {
    std::set<std::string> s;
    for (const auto& P : pts) s.insert(P.key());
    return s;
  };
  if (keyset(extremes) != keyset(bc.extremes))
    throw std::logic_error("minresloc: descent and barycenter disagree");
  long d = f.degree();
  MinResLocResult out;
  out.locus = extremes;
  out.min_value = QQ(2 * d * (d - 1)) * best + f.vres_min();
  return out;
}

bool is_potentially_good(const RationalMapRep& f) {
  MinResLocResult m = minresloc(f);
  if (m.min_value != 0) return false;
  // a zero minimum is witnessed by good reduction at the locus point
  if (local_degree(f, m.locus[0]) != f.degree())
    throw std::logic_error("is_potentially_good: zero minimum without good reduction");
  return true;
}

DiamBounds check_diam_bounds(const RationalMapRep& f) {
  DiamBounds out;
  long d = f.degree();
  BerkPoint scan = BerkPoint::gauss(f.context());
  MinResLocResult m = minresloc(f);
  for (const auto& S : m.locus) {
    QQ lhs = QQ(d - 1) * fin(rho(S, scan)) + 2 * wedge_at(f, S);
    QQ slack = 2 * f.vres_min() - lhs;
    out.minresloc_slack.push_back(slack);
    if (slack < 0) out.ok = false;
  }
  if (d > 2) {
    CrucialMeasure cm = crucial_measure(f);
    std::vector<BerkPoint> supp;
    for (const auto& [pt, w] : cm.weights) supp.push_back(pt);
    FiniteTree Gs = FiniteTree::span(supp);
    for (const auto& S : Gs.vertices()) {
      QQ lhs = fin(rho(S, scan)) + wedge_at(f, S);
      QQ slack = f.vres_min() - lhs;
      out.crucialtree_slack.push_back(slack);
      if (slack < 0) out.ok = false;
    }
  }
  return out;
}

CrucialReport full_report(const RationalMapRep& f) {
  CrucialReport r;
  r.p = f.context().p;
  r.degree = f.degree();
  r.vres_min = f.vres_min();
  r.cm = crucial_measure(f);
  r.mrl = minresloc(f);
  r.potentially_good = (r.mrl.min_value == 0);
  if (r.potentially_good && local_degree(f, r.mrl.locus[0]) != f.degree())
    throw std::logic_error("full_report: zero minimum without good reduction");
  r.diam = check_diam_bounds(f);
  return r;
}

}  // namespace berk
