#include "berkcrucial/profile.hpp"

#include <algorithm>

namespace berk {

namespace {

QQ fin(const ExtValue& v) { return v.value(); }

struct Domain {
  bool lo_inf = false, hi_inf = false;
  QQ lo, hi;
};

// Envelope of -log|P(a + w)| on zeta(a; x) as a function of x.
Plf env_poly(const Poly& P, const TowerElem& a, const Domain& dom) {
  Poly Q = P.shift(a);
  std::vector<std::pair<QQ, QQ>> lines;
  for (int j = 0; j <= Q.deg(); ++j) {
    ExtValue v = Q.coeff(j).val();
    if (v.is_infinity()) continue;
    lines.emplace_back(QQ(j), v.value());
  }
  if (lines.empty()) throw std::logic_error("env_poly of zero polynomial");
  return Plf::lower_envelope(dom.lo_inf, dom.lo, dom.hi_inf, dom.hi, lines);
}

Plf line_x(const Domain& dom) {
  return Plf::affine(dom.lo_inf, dom.lo, dom.hi_inf, dom.hi, QQ(0), QQ(0), QQ(1));
}

Plf const_plf(const Domain& dom, const QQ& c) {
  return Plf::affine(dom.lo_inf, dom.lo, dom.hi_inf, dom.hi, QQ(0), c, QQ(0));
}

// All per-piece profile ingredients for the map with minimal lift F.
struct Kit {
  Plf V0, V1, Vz, E0, VB;
  int d;
};

Kit make_kit(const RationalMapRep& f, const TowerElem& a, const Domain& dom,
             bool need_bivariate) {
  Kit k;
  k.d = f.degree();
  Poly f0 = f.den(), f1 = f.num();
  k.V0 = env_poly(f0, a, dom);
  k.V1 = env_poly(f1, a, dom);
  Poly z = Poly::from_rationals(f.context(), {QQ(0), QQ(1)});
  k.Vz = env_poly(z, a, dom);
  k.E0 = env_poly(f0 * a - f1, a, dom);
  if (need_bivariate) {
    // B(z, w) = F1(1,z) F0(1,w) - F1(1,w) F0(1,z), both recentered at a;
    // lines (j + k, val(F1s_j F0s_k - F1s_k F0s_j)).
    Poly f0s = f0.shift(a), f1s = f1.shift(a);
    std::vector<std::pair<QQ, QQ>> lines;
    int n = std::max(f0s.deg(), f1s.deg());
    for (int j = 0; j <= n; ++j)
      for (int kk = 0; kk <= n; ++kk) {
        if (j == kk) continue;
        TowerElem b = f1s.coeff(j) * f0s.coeff(kk) - f1s.coeff(kk) * f0s.coeff(j);
        if (b.is_zero()) continue;
        lines.emplace_back(QQ(j + kk), b.val().value());
      }
    if (lines.empty())
      throw std::logic_error("bivariate envelope: degenerate map");
    k.VB = Plf::lower_envelope(dom.lo_inf, dom.lo, dom.hi_inf, dom.hi, lines);
  }
  return k;
}

Plf assemble(ProfileKind kind, const Kit& k, const Domain& dom) {
  Plf zero = const_plf(dom, QQ(0));
  Plf lx = line_x(dom);
  Plf minv = Plf::min(k.V0, k.V1);
  Plf min0vz = Plf::min(zero, k.Vz);
  Plf vnum = Plf::min(k.E0, lx + k.V0);
  Plf A = vnum - minv - min0vz;            // rho(S_can, f(S) /\_can S)
  Plf rho_can = lx - min0vz.scaled(QQ(2)); // rho(S, S_can)
  Plf W = rho_can - A;
  Plf TF = (-minv) + min0vz.scaled(QQ(k.d));
  switch (kind) {
    case ProfileKind::Wedge:
      return W;
    case ProfileKind::Potential:
      return -TF;
    case ProfileKind::Crucial: {
      Plf s = W + TF;
      return rho_can.scaled(QQ(1, 2)) + s.scaled(QQ(1, k.d - 1));
    }
    case ProfileKind::ImageDistGauss:
      return k.VB - minv.scaled(QQ(2));
    case ProfileKind::Displacement: {
      Plf idg = k.VB - minv.scaled(QQ(2));
      return rho_can + idg - A.scaled(QQ(2));
    }
    default:
      throw std::logic_error("assemble: unsupported kind");
  }
}

// rho(zeta(a,x), S0) for type II S0.
Plf dist_plf(const TowerElem& a, const Domain& dom, const BerkPoint& S0) {
  QQ t0 = fin(S0.t());
  TowerElem diff = a - S0.center();
  std::vector<std::pair<QQ, QQ>> lines{{QQ(1), QQ(0)}, {QQ(0), t0}};
  if (!diff.is_zero()) lines.emplace_back(QQ(0), diff.val().value());
  Plf u = Plf::lower_envelope(dom.lo_inf, dom.lo, dom.hi_inf, dom.hi, lines);
  Plf lx = line_x(dom);
  return lx + const_plf(dom, t0) - u.scaled(QQ(2));
}

struct PathPiece {
  TowerElem center;
  Domain dom;
  bool arc_up;
};

// Decompose the path [A, B] into center-stable pieces in arc order.
std::vector<PathPiece> decompose(const BerkPoint& A, const BerkPoint& B) {
  if (A == B) throw std::logic_error("edge_profile: trivial segment");
  std::vector<PathPiece> out;
  if (A.is_infinity() || B.is_infinity()) {
    const BerkPoint& X = A.is_infinity() ? B : A;
    Domain dom;
    dom.lo_inf = true;
    if (X.is_type1()) {
      dom.hi_inf = true;
    } else {
      dom.hi = fin(X.t());
    }
    // arc from infinity runs upward in x when starting at infinity
    bool from_inf = A.is_infinity();
    out.push_back(PathPiece{X.center(), dom, from_inf});
    return out;
  }
  BerkPoint J = join(A, B, BerkPoint::infinity(A.context()));
  QQ u = fin(J.t());
  // A-side piece: center a, x in [u, sA]
  if (A != J) {
    Domain dom;
    dom.lo = u;
    if (A.is_type1())
      dom.hi_inf = true;
    else
      dom.hi = fin(A.t());
    out.push_back(PathPiece{A.center(), dom, false});
  }
  if (B != J) {
    Domain dom;
    dom.lo = u;
    if (B.is_type1())
      dom.hi_inf = true;
    else
      dom.hi = fin(B.t());
    out.push_back(PathPiece{B.center(), dom, true});
  }
  return out;
}

}  // namespace

QQ SegmentPLF::slope_from_a() const {
  const ProfilePiece& p = pieces.front();
  if (p.arc_up)
    return p.lo_inf ? p.f.first_slope() : p.f.slope_right(p.x_lo);
  return -(p.hi_inf ? p.f.last_slope() : p.f.slope_left(p.x_hi));
}

QQ SegmentPLF::slope_from_b() const {
  const ProfilePiece& p = pieces.back();
  if (p.arc_up)
    return -(p.hi_inf ? p.f.last_slope() : p.f.slope_left(p.x_hi));
  return p.lo_inf ? p.f.first_slope() : p.f.slope_right(p.x_lo);
}

std::vector<BerkPoint> SegmentPLF::interior_breakpoints() const {
  std::vector<BerkPoint> out;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    for (const QQ& x : p.f.breakpoints())
      out.push_back(BerkPoint::type2(p.center, x).normal_form());
    // junction between pieces
    if (i + 1 < pieces.size())
      out.push_back(BerkPoint::type2(p.center, p.arc_up ? p.x_hi : p.x_lo)
                        .normal_form());
  }
  // drop the endpoints themselves if they slipped in
  std::vector<BerkPoint> keep;
  for (auto& P : out)
    if (P != a && P != b) keep.push_back(P);
  return keep;
}

QQ SegmentPLF::value_at(const BerkPoint& P) const {
  if (!P.is_type2()) throw std::logic_error("SegmentPLF::value_at: type II only");
  QQ x = fin(P.t());
  for (const auto& p : pieces) {
    if (!p.lo_inf && x < p.x_lo) continue;
    if (!p.hi_inf && x > p.x_hi) continue;
    TowerElem d = P.center() - p.center;
    ExtValue dv = d.is_zero() ? ExtValue::infinity() : d.val();
    if (dv >= ExtValue(x)) return p.f.evaluate(x);
  }
  throw std::logic_error("SegmentPLF::value_at: point not on segment");
}

ExtValue SegmentPLF::length() const {
  QQ total(0);
  for (const auto& p : pieces) {
    if (p.lo_inf || p.hi_inf) return ExtValue::infinity();
    total += p.x_hi - p.x_lo;
  }
  return ExtValue(total);
}

SegmentPLF::MinResult SegmentPLF::minimum() const {
  bool have = false;
  MinResult best{QQ(0), a, a};
  for (const auto& p : pieces) {
    Plf::MinResult m = p.f.minimum();
    if (!have || m.value < best.value) {
      best.value = m.value;
      best.arg_lo = BerkPoint::type2(p.center, m.arg_lo).normal_form();
      best.arg_hi = BerkPoint::type2(p.center, m.arg_hi).normal_form();
      have = true;
    } else if (m.value == best.value) {
      best.arg_hi = BerkPoint::type2(p.center, m.arg_hi).normal_form();
    }
  }
  return best;
}

SegmentPLF edge_profile(ProfileKind kind, const RationalMapRep& f,
                        const BerkPoint& S0, const BerkPoint& A,
                        const BerkPoint& B) {
  if (kind == ProfileKind::DistanceTo) return distance_profile(S0, A, B);
  bool uses_s0 = kind == ProfileKind::Wedge || kind == ProfileKind::Potential;
  bool s0_is_can = !uses_s0 || S0 == BerkPoint::gauss(S0.context());
  if (!s0_is_can) {
    if (!S0.is_type2())
      throw std::logic_error("edge_profile: S0 must be type II");
    Mobius h = gauss_to(S0);
    Mobius hinv = h.adjugate();
    RationalMapRep g = f.conjugate(h);
    BerkPoint A2 = mobius_image(hinv, A), B2 = mobius_image(hinv, B);
    SegmentPLF base =
        edge_profile(kind, g, BerkPoint::gauss(g.context()), A2, B2);
    // map pieces back through h: zeta(c, x) -> zeta(a0 + u c, x + t0)
    QQ t0 = fin(S0.t());
    TowerContext ctx = TowerContext::join(h.context(), base.pieces[0].center.context());
    SegmentPLF out;
    out.a = A;
    out.b = B;
    for (auto p : base.pieces) {
      TowerElem c = p.center.embed(ctx);
      p.center = h.m10.embed(ctx) + h.m11.embed(ctx) * c;
      p.x_lo += t0;
      p.x_hi += t0;
      p.f = p.f.x_shifted(t0);
      out.pieces.push_back(std::move(p));
    }
    return out;
  }
  TowerContext ctx = TowerContext::join(f.context(), A.context());
  ctx = TowerContext::join(ctx, B.context());
  RationalMapRep g = f.context() == ctx ? f : f.embed(ctx);
  auto embp = [&](const BerkPoint& P) {
    if (P.is_infinity()) return BerkPoint::infinity(ctx);
    if (P.is_type1()) return BerkPoint::type1(P.center().embed(ctx));
    return BerkPoint::type2(P.center().embed(ctx), fin(P.t()));
  };
  BerkPoint A2 = embp(A), B2 = embp(B);
  SegmentPLF out;
  out.a = A2;
  out.b = B2;
  bool need_bi = kind == ProfileKind::ImageDistGauss ||
                 kind == ProfileKind::Displacement;
  for (const PathPiece& pp : decompose(A2, B2)) {
    Kit k = make_kit(g, pp.center, pp.dom, need_bi);
    ProfilePiece piece;
    piece.center = pp.center;
    piece.lo_inf = pp.dom.lo_inf;
    piece.hi_inf = pp.dom.hi_inf;
    piece.x_lo = pp.dom.lo;
    piece.x_hi = pp.dom.hi;
    piece.arc_up = pp.arc_up;
    piece.f = assemble(kind, k, pp.dom);
    out.pieces.push_back(std::move(piece));
  }
  // arc order: the a-side (descending) piece comes first when present
  std::stable_sort(out.pieces.begin(), out.pieces.end(),
                   [](const ProfilePiece& x, const ProfilePiece& y) {
                     return !x.arc_up && y.arc_up;
                   });
  return out;
}

SegmentPLF distance_profile(const BerkPoint& S0, const BerkPoint& A,
                            const BerkPoint& B) {
  if (!S0.is_type2())
    throw std::logic_error("distance_profile: S0 must be type II");
  TowerContext ctx = TowerContext::join(S0.context(), A.context());
  ctx = TowerContext::join(ctx, B.context());
  auto embp = [&](const BerkPoint& P) {
    if (P.is_infinity()) return BerkPoint::infinity(ctx);
    if (P.is_type1()) return BerkPoint::type1(P.center().embed(ctx));
    return BerkPoint::type2(P.center().embed(ctx), fin(P.t()));
  };
  BerkPoint A2 = embp(A), B2 = embp(B), S0e = embp(S0);
  SegmentPLF out;
  out.a = A2;
  out.b = B2;
  for (const PathPiece& pp : decompose(A2, B2)) {
    ProfilePiece piece;
    piece.center = pp.center;
    piece.lo_inf = pp.dom.lo_inf;
    piece.hi_inf = pp.dom.hi_inf;
    piece.x_lo = pp.dom.lo;
    piece.x_hi = pp.dom.hi;
    piece.arc_up = pp.arc_up;
    piece.f = dist_plf(pp.center, pp.dom, S0e);
    out.pieces.push_back(std::move(piece));
  }
  std::stable_sort(out.pieces.begin(), out.pieces.end(),
                   [](const ProfilePiece& x, const ProfilePiece& y) {
                     return !x.arc_up && y.arc_up;
                   });
  return out;
}

QQ crucial_at(const RationalMapRep& f, const BerkPoint& S) {
  if (!S.is_type2()) throw std::logic_error("crucial_at: type II required");
  if (f.degree() < 2) throw InputError("crucial_at: degree must be > 1");
  // evaluate the crucial profile on a short segment ending at S
  QQ x = fin(S.t());
  Domain dom;
  dom.lo = x;
  dom.hi = x + 1;
  TowerContext ctx = TowerContext::join(f.context(), S.context());
  ctx = ctx.extended_for(x);
  RationalMapRep g = f.context() == ctx ? f : f.embed(ctx);
  Kit k = make_kit(g, S.center().embed(ctx), dom, false);
  return assemble(ProfileKind::Crucial, k, dom).evaluate(x);
}

QQ t_potential(const RationalMapRep& f, const BerkPoint& S) {
  if (!S.is_type2()) throw std::logic_error("t_potential: type II required");
  QQ x = fin(S.t());
  Domain dom;
  dom.lo = x;
  dom.hi = x + 1;
  TowerContext ctx = TowerContext::join(f.context(), S.context());
  ctx = ctx.extended_for(x);
  RationalMapRep g = f.context() == ctx ? f : f.embed(ctx);
  Kit k = make_kit(g, S.center().embed(ctx), dom, false);
  return -assemble(ProfileKind::Potential, k, dom).evaluate(x);
}

}  // namespace berk
