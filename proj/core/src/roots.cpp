#include "berkcrucial/roots.hpp"

#include <algorithm>

#include "berkcrucial/fp.hpp"

namespace berk {

namespace {

struct HullEdge {
  QQ root_val;  // valuation of the roots on this edge
  int count;    // horizontal length
};

// Lower Newton polygon of P; edges ordered by increasing j.
std::vector<HullEdge> newton_polygon(const Poly& P) {
  std::vector<std::pair<int, QQ>> pts;
  for (int j = 0; j <= P.deg(); ++j) {
    ExtValue v = P.coeff(j).val();
    if (!v.is_infinity()) pts.emplace_back(j, v.value());
  }
  // monotone chain, lower hull
  std::vector<std::pair<int, QQ>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull[hull.size() - 1];
      // keep if b is strictly below segment a-pt
      QQ lhs = (b.second - a.second) * (pt.first - a.first);
      QQ rhs = (pt.second - a.second) * (b.first - a.first);
      if (lhs < rhs) break;
      hull.pop_back();
    }
    hull.push_back(pt);
  }
  std::vector<HullEdge> edges;
  for (size_t i = 0; i + 1 < hull.size(); ++i) {
    QQ slope = (hull[i + 1].second - hull[i].second) /
               QQ(hull[i + 1].first - hull[i].first);
    slope.canonicalize();
    edges.push_back(HullEdge{-slope, hull[i + 1].first - hull[i].first});
  }
  return edges;
}

// One squarefree root in w-coordinates, certified by ultrametric Newton.
struct WRoot {
  TowerElem w;
  ExtValue err;
};

TowerElem truncate_elem(const TowerElem& x, const QQ& depth) {
  return x.truncate_below(depth);
}

// Newton refinement from a start point with v(R(w0)) > 2 v(R'(w0)); under
// that hypothesis the iteration converges to the unique root within
// p^-(v(R(w)) - v(R'(w))) of w, and the certified depth doubles per step.
WRoot newton_refine(const Poly& R, TowerElem w, const QQ& target, int max_steps) {
  Poly Rp = R.derivative();
  for (int step = 0; step < max_steps; ++step) {
    TowerElem val_at = R.eval(w);
    if (val_at.is_zero()) return {w, ExtValue::infinity()};
    TowerElem der_at = Rp.eval(w);
    QQ vr = val_at.val().value();
    QQ vd = der_at.val().value();
    if (!(vr > 2 * vd))
      throw NonSeparable("padic_roots: Newton hypothesis violated");
    QQ err = vr - vd;
    if (err >= target) return {w, ExtValue(err)};
    w = w - val_at / der_at;
    w = truncate_elem(w, target + 2);
  }
  throw NonSeparable("padic_roots: Newton refinement stalled");
}

// Roots of the squarefree polynomial Q with valuation strictly greater than
// vmin (use vmin = -infinity semantics via has_vmin=false for all roots).
void squarefree_roots(const Poly& Q, bool restrict_positive, const RootPolicy& policy,
                      std::vector<WRoot>& out, int depth = 0) {
  // A cluster that keeps refusing to split while the ramification index grows
  // signals a wildly ramified splitting field, which the tower p^(1/e) cannot
  // contain; tame-but-twisted uniformizers already surface as residue
  // extensions, so this is the one remaining escape hatch.
  if (depth > 32 || Q.context().e > 48)
    throw UnsupportedResidueExtension(
        "padic_roots: splitting field is not contained in the ramified tower "
        "(wild ramification suspected)");
  Poly P = Q;
  const TowerContext ctx = P.context();
  if (P.deg() < 1) return;
  // exact root at 0
  if (P.coeff(0).is_zero()) {
    out.push_back({TowerElem::zero(ctx), ExtValue::infinity()});
    std::vector<TowerElem> shifted(P.coeffs().begin() + 1, P.coeffs().end());
    P = Poly(ctx, std::move(shifted));
    if (P.deg() < 1) return;
  }
  for (const HullEdge& edge : newton_polygon(P)) {
    if (restrict_positive && edge.root_val <= 0) continue;
    // move roots of valuation t to valuation 0
    TowerContext ext = ctx.extended_for(edge.root_val);
    Poly Pe = P.embed(ext);
    TowerElem u = TowerElem::uniformizer(ext, edge.root_val);
    Poly R = Pe.scale_arg(u);
    // normalize to min coefficient valuation 0
    ExtValue mv = ExtValue::infinity();
    for (const auto& c : R.coeffs()) mv = min(mv, c.val());
    TowerElem scale = TowerElem::uniformizer(ext, mv.value()).inverse();
    R = R * scale;
    // reduction and its nonzero-root part
    FpPoly Rbar{ext.p, {}};
    for (int j = 0; j <= R.deg(); ++j) Rbar.c.push_back(R.coeff(j).residue());
    Rbar.trim();
    int I = 0;
    while (I < static_cast<int>(Rbar.c.size()) && Rbar.c[I] == 0) ++I;
    FpPoly S{ext.p, std::vector<long>(Rbar.c.begin() + I, Rbar.c.end())};
    int covered = 0;
    std::vector<WRoot> sub;
    for (long r = 1; r < ext.p; ++r) {
      int m = S.is_zero() ? 0 : fp_ord_at(S, r);
      if (m == 0) continue;
      covered += m;
      TowerElem w0(ext, QQ(r));
      if (m == 1) {
        sub.push_back(newton_refine(R, w0, policy.min_err, policy.max_newton_steps));
      } else {
        // recurse on the recentered cluster
        Poly Rr = R.shift(w0);
        std::vector<WRoot> inner;
        squarefree_roots(Rr, /*restrict_positive=*/true, policy, inner, depth + 1);
        if (static_cast<int>(inner.size()) != m)
          throw NonSeparable("padic_roots: cluster did not split as expected");
        for (auto& ir : inner) sub.push_back({w0.embed(ir.w.context()) + ir.w, ir.err});
      }
    }
    if (covered < S.deg()) {
      // leftover residual factor with roots outside F_p
      FpPoly resid = S;
      for (long r = 1; r < ext.p; ++r) {
        int m = S.is_zero() ? 0 : fp_ord_at(S, r);
        for (int i = 0; i < m; ++i) {
          FpPoly lin{ext.p, {((-r) % ext.p + ext.p) % ext.p, 1}};
          resid = fp_divmod(resid, lin).first;
        }
      }
      throw UnsupportedResidueExtension(
          "padic_roots: residual factor over F_" + std::to_string(ext.p) +
          ": " + resid.str());
    }
    // map back to the original variable
    for (auto& wr : sub) {
      TowerElem ue = u.embed(wr.w.context());
      ExtValue err = wr.err.is_infinity()
                         ? ExtValue::infinity()
                         : ExtValue(wr.err.value() + edge.root_val);
      out.push_back({ue * wr.w, err});
    }
  }
}

}  // namespace

std::vector<RootCluster> padic_roots(const Poly& P, const RootPolicy& policy) {
  if (P.is_zero()) throw InputError("padic_roots of the zero polynomial");
  std::vector<RootCluster> clusters;
  if (P.deg() < 1) return clusters;
  for (const auto& [Q, mult] : P.squarefree_decomposition()) {
    std::vector<WRoot> roots;
    squarefree_roots(Q, /*restrict_positive=*/false, policy, roots);
    if (static_cast<int>(roots.size()) != Q.deg())
      throw NonSeparable("padic_roots: lost roots in decomposition");
    for (auto& r : roots)
      clusters.push_back(RootCluster{r.w, r.err, mult});
  }
  return clusters;
}

}  // namespace berk
