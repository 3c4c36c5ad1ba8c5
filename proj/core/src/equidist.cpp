#include "berkcrucial/equidist.hpp"

namespace berk {

namespace {
QQ fin(const ExtValue& v) { return v.value(); }

void require_h1_tree(const FiniteTree& T) {
  for (const auto& v : T.vertices())
    if (!v.is_type2())
      throw InputError("equidist: the test tree must lie in H^1 (type II)");
}
}  // namespace

TreeMeasure retracted_pullback(const RationalMapRep& f, int n,
                               const BerkPoint& S0, const FiniteTree& T,
                               long degree_cap) {
  if (T.trivial()) {
    TreeMeasure m;
    long dn = 1;
    for (int i = 0; i < n; ++i) dn *= f.degree();
    m.add(T.vertices()[0], QQ(dn));
    return m;
  }
  RationalMapRep fn = n == 1 ? f : f.iterate(n, degree_cap);
  long dn = fn.degree();
  EdgeProfiler pg = [&](const BerkPoint& A, const BerkPoint& B) {
    return edge_profile(ProfileKind::Potential, fn, S0, A, B);
  };
  // Delta(potential) = d^n delta_{S0} - (f^n)* delta_{S0} on the line, so the
  // retracted pullback is -Delta_Gamma(potential) + d^n (r)_* delta_{S0}.
  std::vector<TreePLF> built = build_profiled(T, {pg});
  TreeMeasure r = tree_laplacian(built[0]).scaled(QQ(-1));
  r.add(retract_to_tree(S0, built[0].tree), QQ(dn));
  return r;
}

QQ c_constant_bound(const RationalMapRep& f, const BerkPoint& S0) {
  if (!S0.is_type2()) throw InputError("c_constant_bound: type II S0 required");
  if (S0 == BerkPoint::gauss(S0.context())) return f.vres_min();
  return f.conjugate(gauss_to(S0)).vres_min();
}

QQ c_constant_exact_experimental(const RationalMapRep& f, const BerkPoint& S0) {
  // two type I points of B_{S0}: the center and one unit step inside.  The
  // preimage clusters enter as deep type II truncations, since the potential
  // is constant near type I points anyway and approximate centers must not
  // contribute tails beyond their certified depth.
  TowerContext ctx = TowerContext::join(f.context(), S0.context());
  ctx = ctx.extended_for(fin(S0.t()));
  RationalMapRep g = f.context() == ctx ? f : f.embed(ctx);
  TowerElem a0 = S0.center().embed(ctx);
  TowerElem u = TowerElem::uniformizer(ctx, fin(S0.t()));
  std::vector<RootCluster> clusters;
  bool want_inf = false;
  for (const TowerElem& y : {a0, a0 + u}) {
    Poly P = g.num() - g.den() * y;
    if (P.is_zero() || P.deg() < 1)
      throw std::logic_error("c_constant_exact: degenerate preimage divisor");
    for (const auto& cl : padic_roots(P)) clusters.push_back(cl);
    if (P.deg() < g.degree()) want_inf = true;
  }
  QQ depth = std::max(QQ(abs(fin(S0.t()))), QQ(2));
  for (size_t i = 0; i < clusters.size(); ++i) {
    ExtValue vc = clusters[i].center.is_zero() ? ExtValue::infinity()
                                               : clusters[i].center.val();
    if (!vc.is_infinity()) depth = std::max(depth, QQ(abs(vc.value())));
    for (size_t j = i + 1; j < clusters.size(); ++j) {
      TowerElem d = clusters[i].center - clusters[j].center;
      if (!d.is_zero()) depth = std::max(depth, QQ(abs(d.val().value())));
    }
  }
  depth += 4;
  std::vector<BerkPoint> pts{BerkPoint::type2(a0, fin(S0.t()))};
  for (const auto& cl : clusters)
    pts.push_back(BerkPoint::type2(cl.center, depth));
  if (want_inf)
    pts.push_back(BerkPoint::type2(TowerElem::zero(ctx), -depth));
  FiniteTree T = FiniteTree::span(pts);
  EdgeProfiler pg = [&](const BerkPoint& A, const BerkPoint& B) {
    return edge_profile(ProfileKind::Potential, g, S0, A, B);
  };
  std::vector<TreePLF> built = build_profiled(T, {pg});
  return built[0].sup();
}

QQ tree_plf_value(const TreePLF& phi, const BerkPoint& P) {
  BerkPoint r = retract_to_tree(P, phi.tree);
  if (!r.is_type2())
    throw std::logic_error("tree_plf_value: retraction is type I");
  int v = phi.tree.find(r);
  if (v >= 0) return phi.value_at_vertex(v);
  for (size_t e = 0; e < phi.tree.edges().size(); ++e) {
    const auto& ed = phi.tree.edges()[e];
    if (join(phi.tree.vertices()[ed.u], phi.tree.vertices()[ed.v], r) == r)
      return phi.profs[e].value_at(r);
  }
  throw std::logic_error("tree_plf_value: retraction not on the tree");
}

MuBracket mu_integral(const RationalMapRep& f, const TreePLF& phi, int n,
                      const BerkPoint& S0, long degree_cap) {
  require_h1_tree(phi.tree);
  long d = f.degree();
  TreeMeasure pb = retracted_pullback(f, n, S0, phi.tree, degree_cap);
  QQ dn(1);
  for (int i = 0; i < n; ++i) dn *= d;
  QQ value(0);
  for (const auto& [pt, m] : pb.atoms()) value += tree_plf_value(phi, pt) * m;
  value /= dn;
  QQ C = c_constant_bound(f, S0);
  QQ dphi = tree_laplacian(phi).total_variation();
  MuBracket out;
  out.value = value;
  out.err = C * dphi / (dn * QQ(d - 1));
  return out;
}

EquidistRecord quantitative_check(const RationalMapRep& f, int n,
                                  const TreePLF& phi, const BerkPoint& S0,
                                  long degree_cap) {
  require_h1_tree(phi.tree);
  if (!S0.is_type2()) throw InputError("quantitative_check: type II S0");
  long d = f.degree();
  EquidistRecord rec;
  rec.n = n;
  // nu_{f^n} and (an inner approximation of) the f^n crucial tree.  For a
  // potentially good map every iterate has the same single crucial point, so
  // the crucial tree of the iterate, whose type I ends may live in residue
  // extensions, is never needed.
  TreeMeasure nu_n;
  FiniteTree fr_tree;
  bool special = false;
  try {
    MinResLocResult m = minresloc(f);
    if (m.min_value == 0) {
      special = true;
      nu_n.add(m.locus[0], QQ(1));
      fr_tree = crucial_tree(f);
    }
  } catch (const UnsupportedResidueExtension&) {
  }
  if (!special) {
    RationalMapRep fn = n == 1 ? f : f.iterate(n, degree_cap);
    CrucialMeasure cm = crucial_measure(fn);
    nu_n = cm.nu;
    fr_tree = cm.tree;
  }
  QQ A(0);
  for (const auto& [pt, m] : nu_n.atoms()) A += tree_plf_value(phi, pt) * m;
  rec.nu_integral = A;
  // bracket of the mu_f integral at a deeper pullback level
  int N = n;
  long pw = 1;
  for (int i = 0; i < n; ++i) pw *= d;
  while (N < n + 3 && pw * d <= degree_cap) {
    pw *= d;
    ++N;
  }
  MuBracket mb = mu_integral(f, phi, N, S0, degree_cap);
  rec.mu_value = mb.value;
  rec.mu_err = mb.err;
  QQ diff = abs(QQ(A - mb.value));
  rec.lhs_hi = diff + mb.err;
  rec.lhs_lo = diff > mb.err ? QQ(diff - mb.err) : QQ(0);
  // right hand side of the quantitative bound
  QQ C = c_constant_bound(f, S0);
  // sup over Gamma of rho(., S0)
  QQ sup_rho(0);
  for (const auto& v : phi.tree.vertices())
    sup_rho = std::max(sup_rho, fin(rho(v, S0)));
  QQ dphi = tree_laplacian(phi).total_variation();
  QQ sup_abs(0);
  for (size_t v = 0; v < phi.tree.vertices().size(); ++v)
    sup_abs = std::max(sup_abs, QQ(abs(phi.value_at_vertex(static_cast<int>(v)))));
  // endpoints of Gamma not reached by the retraction of the f^n crucial
  // tree; Gamma_{f,FR} is contained in Gamma_{f^n,FR}, so using it can only
  // overcount the missing endpoints, keeping the bound valid.
  std::vector<BerkPoint> retr;
  for (const auto& v : fr_tree.vertices())
    retr.push_back(retract_to_tree(v, phi.tree));
  FiniteTree rtree = FiniteTree::span(retr);
  long missing = 0;
  for (int e : phi.tree.endpoints()) {
    const BerkPoint& ep = phi.tree.vertices()[e];
    bool inside = rtree.contains(ep);
    if (!inside) ++missing;
  }
  QQ dn(1);
  for (int i = 0; i < n; ++i) dn *= d;
  QQ denom = dn - 1;
  rec.rhs = QQ(2) * (C / QQ(d - 1) + sup_rho) / denom * dphi +
            QQ(2 * missing) / denom * sup_abs;
  rec.holds = rec.lhs_hi <= rec.rhs;
  return rec;
}

TreePLF default_test_function(const FiniteTree& T, const BerkPoint& Sstar,
                              const QQ& R) {
  require_h1_tree(T);
  EdgeProfiler gen = [&](const BerkPoint& A, const BerkPoint& B) {
    SegmentPLF dp = distance_profile(Sstar, A, B);
    for (auto& piece : dp.pieces) {
      Plf zero = Plf::affine(piece.lo_inf, piece.x_lo, piece.hi_inf, piece.x_hi,
                             piece.lo_inf ? piece.x_hi : piece.x_lo, QQ(0), QQ(0));
      Plf rminus = (-piece.f).shifted(R);
      piece.f = Plf::max(zero, rminus);
    }
    return dp;
  };
  std::vector<TreePLF> built = build_profiled(T, {gen});
  return built[0];
}

}  // namespace berk
