#include "berkcrucial/ratmap.hpp"

namespace berk {

BiForm BiForm::from_polys(const Poly& num, const Poly& den, int d) {
  if (num.deg() > d || den.deg() > d)
    throw InputError("BiForm: formal degree too small");
  TowerContext j = TowerContext::join(num.context(), den.context());
  BiForm F;
  F.d = d;
  F.ctx = j;
  F.f0.assign(d + 1, TowerElem::zero(j));
  F.f1.assign(d + 1, TowerElem::zero(j));
  for (int i = 0; i <= d; ++i) {
    F.f0[i] = den.coeff(i).embed(j);
    F.f1[i] = num.coeff(i).embed(j);
  }
  return F;
}

Poly BiForm::dehom0() const { return Poly(ctx, f0); }
Poly BiForm::dehom1() const { return Poly(ctx, f1); }

BiForm BiForm::embed(const TowerContext& finer) const {
  BiForm F;
  F.d = d;
  F.ctx = finer;
  for (const auto& x : f0) F.f0.push_back(x.embed(finer));
  for (const auto& x : f1) F.f1.push_back(x.embed(finer));
  return F;
}

BiForm BiForm::scaled(const TowerElem& c) const {
  BiForm F = *this;
  TowerContext j = TowerContext::join(ctx, c.context());
  F.ctx = j;
  for (auto& x : F.f0) x = x.embed(j) * c.embed(j);
  for (auto& x : F.f1) x = x.embed(j) * c.embed(j);
  return F;
}

ExtValue BiForm::min_val() const {
  ExtValue m = ExtValue::infinity();
  for (const auto& x : f0) m = min(m, x.val());
  for (const auto& x : f1) m = min(m, x.val());
  return m;
}

TowerElem resultant(const BiForm& F) {
  // Sylvester matrix of the formal degree-d rows, dimension 2d.
  int d = F.d, n = 2 * d;
  std::vector<std::vector<TowerElem>> M(
      n, std::vector<TowerElem>(n, TowerElem::zero(F.ctx)));
  // rows 0..d-1: shifts of F1 coefficients (descending power layout),
  // rows d..2d-1: shifts of F0; this orientation makes Res(p0, p1) = +1.
  for (int s = 0; s < d; ++s)
    for (int i = 0; i <= d; ++i) {
      M[s][s + i] = F.f1[d - i];
      M[d + s][s + i] = F.f0[d - i];
    }
  // Fraction-free Bareiss with row pivoting.
  TowerElem prev = TowerElem::one(F.ctx);
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M[k][k].is_zero()) {
      int piv = -1;
      for (int r = k + 1; r < n; ++r)
        if (!M[r][k].is_zero()) {
          piv = r;
          break;
        }
      if (piv < 0) return TowerElem::zero(F.ctx);
      std::swap(M[k], M[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j)
        M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
      M[i][k] = TowerElem::zero(F.ctx);
    }
    prev = M[k][k];
  }
  TowerElem det = M[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

std::pair<BiForm, QQ> minimalize(const BiForm& F) {
  ExtValue mu = F.min_val();
  if (mu.is_infinity()) throw InputError("minimalize: zero lift");
  const QQ& m = mu.value();
  if (m == 0) return {F, QQ(0)};
  TowerContext ctx = F.ctx.extended_for(m);
  BiForm G = F.embed(ctx);
  TowerElem u = TowerElem::uniformizer(ctx, m).inverse();
  return {G.scaled(u), m};
}

Mobius Mobius::identity(const TowerContext& ctx) {
  return Mobius{TowerElem::one(ctx), TowerElem::zero(ctx), TowerElem::zero(ctx),
                TowerElem::one(ctx)};
}

Mobius Mobius::affine(const TowerElem& a, const TowerElem& b) {
  TowerContext j = TowerContext::join(a.context(), b.context());
  return Mobius{TowerElem::one(j), TowerElem::zero(j), a.embed(j), b.embed(j)};
}

Mobius Mobius::inversion(const TowerContext& ctx) {
  return Mobius{TowerElem::zero(ctx), TowerElem::one(ctx), TowerElem::one(ctx),
                TowerElem::zero(ctx)};
}

Mobius Mobius::adjugate() const {
  return Mobius{m11, -m01, -m10, m00};
}

Mobius Mobius::compose(const Mobius& o) const {
  return Mobius{m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
}

TowerElem Mobius::det() const { return m00 * m11 - m01 * m10; }

BiForm sandwich(const Mobius& A, const BiForm& F, const Mobius& B) {
  // G_i = A_i(F0(B(p)), F1(B(p)))
  // First substitute the linear forms B into F0, F1.
  TowerContext j = TowerContext::join(F.ctx, A.context());
  j = TowerContext::join(j, B.context());
  int d = F.d;
  // b0 = B00 p0 + B01 p1, b1 = B10 p0 + B11 p1 (column action)
  // F_i(b0, b1) = sum_k c_k b0^{d-k} b1^k
  auto subst = [&](const std::vector<TowerElem>& cs) {
    // powers of b0 and b1 as coefficient vectors in (p0, p1)
    std::vector<std::vector<TowerElem>> pow0(d + 1), pow1(d + 1);
    std::vector<TowerElem> one{TowerElem::one(j)};
    auto mul_lin = [&](const std::vector<TowerElem>& v, const TowerElem& x,
                       const TowerElem& y) {
      std::vector<TowerElem> r(v.size() + 1, TowerElem::zero(j));
      for (size_t i = 0; i < v.size(); ++i) {
        r[i] = r[i] + v[i] * x;      // p0 part
        r[i + 1] = r[i + 1] + v[i] * y;  // p1 part
      }
      return r;
    };
    pow0[0] = one;
    pow1[0] = one;
    for (int k = 1; k <= d; ++k) {
      pow0[k] = mul_lin(pow0[k - 1], B.m00.embed(j), B.m01.embed(j));
      pow1[k] = mul_lin(pow1[k - 1], B.m10.embed(j), B.m11.embed(j));
    }
    std::vector<TowerElem> out(d + 1, TowerElem::zero(j));
    for (int k = 0; k <= d; ++k) {
      if (cs[k].is_zero()) continue;
      // b0^{d-k} * b1^k
      const auto& u = pow0[d - k];
      const auto& v = pow1[k];
      for (size_t i = 0; i < u.size(); ++i)
        for (size_t l = 0; l < v.size(); ++l)
          out[i + l] = out[i + l] + cs[k].embed(j) * u[i] * v[l];
    }
    return out;
  };
  std::vector<TowerElem> s0 = subst(F.f0), s1 = subst(F.f1);
  BiForm G;
  G.d = d;
  G.ctx = j;
  G.f0.assign(d + 1, TowerElem::zero(j));
  G.f1.assign(d + 1, TowerElem::zero(j));
  for (int i = 0; i <= d; ++i) {
    G.f0[i] = A.m00.embed(j) * s0[i] + A.m01.embed(j) * s1[i];
    G.f1[i] = A.m10.embed(j) * s0[i] + A.m11.embed(j) * s1[i];
  }
  return G;
}

RationalMapRep::RationalMapRep(BiForm lift)
    : lift_(minimalize(lift).first),
      vres_(0),
      reduction_(reduce(lift_)) {
  TowerElem r = resultant(lift_);
  if (r.is_zero()) throw InputError("RationalMapRep: degenerate lift (Res = 0)");
  vres_ = r.val().value();
}

ResidueMap RationalMapRep::reduce(const BiForm& L) {
  std::vector<long> g0, g1;
  for (const auto& x : L.f0) g0.push_back(x.residue());
  for (const auto& x : L.f1) g1.push_back(x.residue());
  return ResidueMap(L.ctx.p, std::move(g0), std::move(g1));
}

RationalMapRep RationalMapRep::from_polys(const Poly& num, const Poly& den) {
  int d = std::max(num.deg(), den.deg());
  if (d < 1) throw InputError("RationalMapRep: degree must be >= 1");
  return RationalMapRep(BiForm::from_polys(num, den, d));
}

RationalMapRep RationalMapRep::conjugate(const Mobius& M) const {
  return RationalMapRep(sandwich(M.adjugate(), lift_, M));
}

RationalMapRep RationalMapRep::iterate(int n, long degree_cap) const {
  if (n < 1) throw InputError("iterate: n must be positive");
  double dn = 1;
  for (int i = 0; i < n; ++i) {
    dn *= degree();
    if (dn > static_cast<double>(degree_cap))
      throw DegreeCapExceeded("iterate: d^n exceeds cap");
  }
  BiForm acc = lift_;
  for (int i = 1; i < n; ++i) {
    // substitute acc into lift_: G_j = F_j(acc0, acc1), homogeneous degree
    // d * deg(acc).
    int dd = lift_.d * acc.d;
    TowerContext j = TowerContext::join(lift_.ctx, acc.ctx);
    std::vector<std::vector<TowerElem>> pow0(lift_.d + 1), pow1(lift_.d + 1);
    pow0[0] = {TowerElem::one(j)};
    pow1[0] = {TowerElem::one(j)};
    auto mul_form = [&](const std::vector<TowerElem>& a,
                        const std::vector<TowerElem>& b) {
      std::vector<TowerElem> r(a.size() + b.size() - 1, TowerElem::zero(j));
      for (size_t x = 0; x < a.size(); ++x) {
        if (a[x].is_zero()) continue;
        for (size_t y = 0; y < b.size(); ++y)
          r[x + y] = r[x + y] + a[x] * b[y];
      }
      return r;
    };
    std::vector<TowerElem> a0(acc.f0.size()), a1(acc.f1.size());
    for (size_t t = 0; t < acc.f0.size(); ++t) a0[t] = acc.f0[t].embed(j);
    for (size_t t = 0; t < acc.f1.size(); ++t) a1[t] = acc.f1[t].embed(j);
    for (int k = 1; k <= lift_.d; ++k) {
      pow0[k] = mul_form(pow0[k - 1], a0);
      pow1[k] = mul_form(pow1[k - 1], a1);
    }
    BiForm next;
    next.d = dd;
    next.ctx = j;
    next.f0.assign(dd + 1, TowerElem::zero(j));
    next.f1.assign(dd + 1, TowerElem::zero(j));
    for (int k = 0; k <= lift_.d; ++k) {
      auto prod = mul_form(pow0[lift_.d - k], pow1[k]);
      for (size_t t = 0; t < prod.size(); ++t) {
        if (!lift_.f0[k].is_zero())
          next.f0[t] = next.f0[t] + lift_.f0[k].embed(j) * prod[t];
        if (!lift_.f1[k].is_zero())
          next.f1[t] = next.f1[t] + lift_.f1[k].embed(j) * prod[t];
      }
    }
    acc = minimalize(next).first;
  }
  return RationalMapRep(acc);
}

std::pair<Poly, int> RationalMapRep::fixed_point_divisor() const {
  // numerator of f(z) - z: F1(1,z) - z*F0(1,z); infinity multiplicity is
  // (d+1) - deg of it.
  Poly zpoly = Poly::from_rationals(context(), {QQ(0), QQ(1)});
  Poly fx = num() - zpoly * den();
  if (fx.is_zero())
    throw InputError("fixed_point_divisor: map is the identity");
  return {fx, degree() + 1 - fx.deg()};
}

ExtValue RationalMapRep::chordal_derivative_val(const TowerElem& a,
                                                bool a_inf) const {
  // f^#(a) = |f'(a)| * max(1,|a|)^2 / max(1,|f(a)|)^2 in chordal terms; in
  // valuations v(f^#) = v(f'(a)) - 2 max(0,-v(a)) + 2 max(0,-v(f(a))).
  // Infinity handled by the coordinate flip z -> 1/z on both sides.
  RationalMapRep g = *this;
  TowerElem pt = a;
  if (a_inf) {
    // conjugate by the flip z -> 1/z, a chordal isometry, so the chordal
    // derivative at infinity equals that of the conjugate at 0
    Mobius inv = Mobius::inversion(context());
    g = RationalMapRep(sandwich(inv, lift_, inv));
    pt = TowerElem::zero(context());
  }
  Poly n = g.num(), d0 = g.den();
  TowerElem den_at = d0.eval(pt);
  if (den_at.is_zero()) {
    // f(pt) = infinity: flip the target coordinate, g2 = 1/f
    BiForm fl = g.lift();
    std::swap(fl.f0, fl.f1);
    return RationalMapRep(fl).chordal_derivative_val(pt, false);
  }
  TowerElem num_at = n.eval(pt);
  TowerElem fprime =
      (n.derivative().eval(pt) * den_at - n.eval(pt) * d0.derivative().eval(pt)) /
      (den_at * den_at);
  if (fprime.is_zero()) return ExtValue::infinity();
  QQ v = fprime.val().value();
  ExtValue va = pt.val();
  if (!va.is_infinity() && va.value() < 0) v -= 2 * (-va.value());
  TowerElem fa = num_at / den_at;
  ExtValue vfa = fa.val();
  if (!vfa.is_infinity() && vfa.value() < 0) v += 2 * (-vfa.value());
  return ExtValue(v);
}

RationalMapRep RationalMapRep::embed(const TowerContext& finer) const {
  return RationalMapRep(lift_.embed(finer));
}

}  // namespace berk
