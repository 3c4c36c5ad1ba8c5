#include "berkcrucial/berk_point.hpp"

#include <sstream>

namespace berk {

namespace {
QQ fin(const ExtValue& v) { return v.value(); }
}  // namespace

BerkPoint BerkPoint::normal_form() const {
  if (is_type1()) {
    if (inf_) return *this;
    return *this;
  }
  return type2(c_.truncate_below(fin(t_)), fin(t_));
}

bool BerkPoint::operator==(const BerkPoint& o) const {
  if (inf_ || o.inf_) return inf_ == o.inf_;
  if (t_.is_infinity() != o.t_.is_infinity()) return false;
  if (t_.is_infinity()) return c_ == o.c_;
  if (!(t_ == o.t_)) return false;
  ExtValue d = (c_ - o.c_).is_zero() ? ExtValue::infinity() : (c_ - o.c_).val();
  return d >= t_;
}

std::string BerkPoint::key() const {
  BerkPoint n = normal_form();
  std::ostringstream os;
  if (n.inf_) {
    os << "I:inf";
  } else if (n.is_type1()) {
    os << "I:" << n.c_.str();
  } else {
    os << "II:" << n.c_.str() << ";" << n.t_.str();
  }
  return os.str();
}

std::string BerkPoint::str() const {
  if (inf_) return "inf";
  if (is_type1()) return c_.str();
  return "zeta(" + c_.str() + "; " + t_.str() + ")";
}

ExtValue center_dist_val(const BerkPoint& A, const BerkPoint& B) {
  if (A.is_infinity() || B.is_infinity())
    throw std::logic_error("center_dist_val with infinity");
  TowerElem d = A.center() - B.center();
  return d.is_zero() ? ExtValue::infinity() : d.val();
}

namespace {
// meet of A and B relative to infinity: zeta(a; min(sA, sB, v(a-b)))
BerkPoint lca_inf(const BerkPoint& A, const BerkPoint& B) {
  if (A.is_infinity() || B.is_infinity())
    throw std::logic_error("lca_inf with infinity argument");
  ExtValue u = min(min(A.t(), B.t()), center_dist_val(A, B));
  if (u.is_infinity()) return A;  // equal type I points
  return BerkPoint::type2(A.center(), u.value());
}
}  // namespace

BerkPoint join(const BerkPoint& S, const BerkPoint& Sp, const BerkPoint& S0) {
  if (S == Sp) return S;
  if (S == S0 || Sp == S0) return S0;
  int ninf = (S.is_infinity() ? 1 : 0) + (Sp.is_infinity() ? 1 : 0) +
             (S0.is_infinity() ? 1 : 0);
  if (ninf >= 2) return BerkPoint::infinity(S.context());
  if (S.is_infinity()) return lca_inf(Sp, S0);
  if (Sp.is_infinity()) return lca_inf(S, S0);
  if (S0.is_infinity()) return lca_inf(S, Sp);
  BerkPoint j01 = lca_inf(S, Sp), j02 = lca_inf(S, S0), j12 = lca_inf(Sp, S0);
  // median = deepest of the three pairwise meets
  const BerkPoint* best = &j01;
  if (best->t() < j02.t()) best = &j02;
  if (best->t() < j12.t()) best = &j12;
  return *best;
}

ExtValue rho(const BerkPoint& S, const BerkPoint& Sp) {
  if (S == Sp) return ExtValue(QQ(0));
  if (S.is_type1() || Sp.is_type1()) return ExtValue::infinity();
  ExtValue u = min(min(S.t(), Sp.t()), center_dist_val(S, Sp));
  return ExtValue(fin(S.t()) - fin(u) + fin(Sp.t()) - fin(u));
}

ExtValue hsia_can(const BerkPoint& S, const BerkPoint& Sp) {
  // -log [S, S']_can = -log [S,S']_inf - log [S,inf]_can - log [S',inf]_can
  // with -log [X, inf]_can = -min(0, v(center), t).
  auto inf_part = [](const BerkPoint& X) -> QQ {
    ExtValue vc = X.center().is_zero() ? ExtValue::infinity() : X.center().val();
    ExtValue m = min(min(ExtValue(QQ(0)), vc), X.t());
    return QQ(-m.value());
  };
  if (S.is_infinity() && Sp.is_infinity()) return ExtValue::infinity();
  if (S.is_infinity()) return ExtValue(inf_part(Sp));
  if (Sp.is_infinity()) return ExtValue(inf_part(S));
  ExtValue u = min(min(S.t(), Sp.t()), center_dist_val(S, Sp));
  if (u.is_infinity()) return ExtValue::infinity();  // equal type I points
  return ExtValue(fin(u) + inf_part(S) + inf_part(Sp));
}

ExtValue gauss_val(const Poly& P, const BerkPoint& S) {
  if (P.is_zero()) return ExtValue::infinity();
  if (S.is_infinity())
    throw std::logic_error("gauss_val at the point at infinity");
  Poly Q = P.shift(S.center());
  if (S.is_type1()) {
    TowerElem v = Q.coeff(0);
    return v.is_zero() ? ExtValue::infinity() : v.val();
  }
  ExtValue best = ExtValue::infinity();
  for (int j = 0; j <= Q.deg(); ++j) {
    ExtValue cv = Q.coeff(j).val();
    if (cv.is_infinity()) continue;
    best = min(best, ExtValue(cv.value() + QQ(j) * fin(S.t())));
  }
  return best;
}

ExtValue seminorm_val(const Poly& num, const Poly& den, const BerkPoint& S) {
  if (num.is_zero()) throw std::logic_error("seminorm_val of zero function");
  ExtValue n = gauss_val(num, S), d = gauss_val(den, S);
  if (n.is_infinity() || d.is_infinity())
    throw std::logic_error("seminorm_val: type I point on a zero/pole");
  return ExtValue(fin(n) - fin(d));
}

BerkPoint map_image(const RationalMapRep& f, const BerkPoint& S) {
  TowerContext ctx = TowerContext::join(f.context(), S.context());
  RationalMapRep g = f.context() == ctx ? f : f.embed(ctx);
  Poly f0 = g.den(), f1 = g.num();
  if (S.is_type1()) {
    if (S.is_infinity()) {
      // evaluate the forms at (0, 1): top coefficients
      TowerElem d0 = g.lift().f0.back(), n1 = g.lift().f1.back();
      if (d0.is_zero()) return BerkPoint::infinity(ctx);
      return BerkPoint::type1(n1 / d0);
    }
    TowerElem a = S.center().embed(ctx);
    TowerElem d0 = f0.eval(a), n1 = f1.eval(a);
    if (d0.is_zero()) return BerkPoint::infinity(ctx);
    return BerkPoint::type1(n1 / d0);
  }
  // Type II: valuation-jump descent on the digits of the image center.
  BerkPoint Se = BerkPoint::type2(S.center().embed(ctx), fin(S.t()));
  auto v_of = [&](const TowerElem& c) -> QQ {
    Poly numc = f1 - f0 * c;
    ExtValue n = gauss_val(numc, Se), d = gauss_val(f0, Se);
    if (n.is_infinity()) throw std::logic_error("map_image: constant map");
    return QQ(fin(n) - fin(d));
  };
  TowerElem bhat = TowerElem::zero(ctx);
  QQ shat = v_of(bhat);
  long guard = 0;
  while (true) {
    if (++guard > 4096)
      throw CertificationFailed("map_image: descent did not terminate");
    TowerContext ext = ctx.extended_for(shat);
    if (!(ext == ctx)) {
      ctx = ext;
      g = g.embed(ctx);
      f0 = g.den();
      f1 = g.num();
      bhat = bhat.embed(ctx);
      Se = BerkPoint::type2(Se.center().embed(ctx), fin(Se.t()));
    }
    TowerElem u = TowerElem::uniformizer(ctx, shat);
    bool improved = false;
    for (long r = 0; r < ctx.p; ++r) {
      TowerElem c0 = bhat + u * TowerElem(ctx, QQ(r));
      QQ sp = v_of(c0);
      if (sp > shat) {
        bhat = c0;
        shat = sp;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return BerkPoint::type2(bhat, shat).normal_form();
}

BerkPoint mobius_image(const Mobius& M, const BerkPoint& S) {
  TowerContext ctx = TowerContext::join(M.context(), S.context());
  auto emb = [&](const TowerElem& x) { return x.embed(ctx); };
  TowerElem m00 = emb(M.m00), m01 = emb(M.m01), m10 = emb(M.m10), m11 = emb(M.m11);
  if (S.is_type1()) {
    TowerElem den, num;
    if (S.is_infinity()) {
      den = m01;
      num = m11;
    } else {
      TowerElem a = emb(S.center());
      den = m00 + m01 * a;
      num = m10 + m11 * a;
    }
    if (den.is_zero()) return BerkPoint::infinity(ctx);
    return BerkPoint::type1(num / den);
  }
  TowerElem a = emb(S.center());
  QQ t = fin(S.t());
  auto affine_pt = [&](const TowerElem& al, const TowerElem& be,
                       const BerkPoint& P) {
    // z -> al + be z on zeta(c, s)
    TowerElem c = al + be * emb(P.center());
    QQ s = fin(P.t()) + fin(be.val());
    return BerkPoint::type2(c, s);
  };
  if (m01.is_zero()) {
    // affine: (m10 + m11 z)/m00
    TowerElem al = m10 / m00, be = m11 / m00;
    return affine_pt(al, be, S).normal_form();
  }
  // (m10 + m11 z)/(m00 + m01 z) = m11/m01 + (m10 m01 - m11 m00)/(m01 (m00 + m01 z))
  TowerElem alpha = m11 / m01;
  TowerElem beta = (m10 * m01 - m11 * m00) / (m01 * m01);
  // w1 = m00/m01 + z; w2 = 1/w1; result = alpha + beta w2
  BerkPoint w1 = affine_pt(m00 / m01, TowerElem::one(ctx), S);
  // inversion on a type II point
  ExtValue vb = w1.center().is_zero() ? ExtValue::infinity() : w1.center().val();
  BerkPoint w2 = BerkPoint::gauss(ctx);
  if (vb >= w1.t()) {
    w2 = BerkPoint::type2(TowerElem::zero(ctx), -fin(w1.t()));
  } else {
    w2 = BerkPoint::type2(w1.center().inverse(),
                          fin(w1.t()) - 2 * fin(vb));
  }
  return affine_pt(alpha, beta, w2).normal_form();
}

Mobius gauss_to(const BerkPoint& S2) {
  if (!S2.is_type2()) throw std::logic_error("gauss_to: type II required");
  // canonical center, so that residue classes of directions are chart-stable
  BerkPoint S = S2.normal_form();
  QQ t = S.t().value();
  TowerContext ctx = S.context().extended_for(t);
  TowerElem a = S.center().embed(ctx);
  TowerElem b = TowerElem::uniformizer(ctx, t);
  return Mobius::affine(a, b);
}

P1Fp direction_toward(const BerkPoint& S, const BerkPoint& X) {
  if (!S.is_type2()) throw std::logic_error("direction_toward: base not type II");
  if (S == X) throw std::logic_error("direction_toward: X equals the base");
  Mobius h = gauss_to(S);
  BerkPoint Xp = mobius_image(h.adjugate(), X);
  if (Xp.is_infinity()) return P1Fp::infinity();
  ExtValue vc = Xp.center().is_zero() ? ExtValue::infinity() : Xp.center().val();
  if (!vc.is_infinity() && vc.value() < 0) return P1Fp::infinity();
  if (Xp.is_type2() && Xp.t().value() <= 0) {
    if (Xp.t().value() == 0)
      throw std::logic_error("direction_toward: X equals the base");
    return P1Fp::infinity();
  }
  return P1Fp::finite(Xp.center().residue(), S.context().p);
}

BerkPoint direction_rep(const BerkPoint& S, const P1Fp& v) {
  if (!S.is_type2()) throw std::logic_error("direction_rep: base not type II");
  Mobius h = gauss_to(S);
  TowerContext ctx = h.context();
  BerkPoint local = v.inf
                        ? BerkPoint::type2(TowerElem::zero(ctx), QQ(-1))
                        : BerkPoint::type2(TowerElem(ctx, QQ(v.r)), QQ(1));
  return mobius_image(h, local);
}

}  // namespace berk
