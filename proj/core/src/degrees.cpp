#include "berkcrucial/degrees.hpp"

namespace berk {

namespace {
ResidueMap make_reduced(const RationalMapRep& f, const Mobius& phi,
                        const Mobius& psi) {
  BiForm g = sandwich(psi.adjugate(), f.lift(), phi);
  return RationalMapRep(g).reduction();
}
}  // namespace

DegreeData::DegreeData(const RationalMapRep& f, const BerkPoint& S)
    : f_(f),
      at_(S.normal_form()),
      image_(map_image(f, S)),
      fixed_(image_ == at_),
      phi_(gauss_to(at_)),
      psi_(fixed_ ? phi_ : gauss_to(image_)),
      reduced_(make_reduced(f, phi_, psi_)) {
  if (!S.is_type2())
    throw std::logic_error("DegreeData: type II point required");
}

std::vector<std::pair<P1Fp, int>> DegreeData::preimage_direction_masses(
    const P1Fp& w) const {
  int key = w.inf ? -1 : static_cast<int>(w.r);
  for (const auto& [k, v] : cache_)
    if (k == key) return v;
  // the measured type I point y in the class w at f(S)
  TowerContext ctx = psi_.context();
  BerkPoint local = w.inf ? BerkPoint::infinity(ctx)
                          : BerkPoint::type1(TowerElem(ctx, QQ(w.r)));
  BerkPoint y = mobius_image(psi_, local);
  // the divisor f^{-1}(y)
  RationalMapRep g = f_.context() == ctx ? f_ : f_.embed(ctx);
  Poly P;
  if (y.is_infinity())
    P = g.den();
  else
    P = g.num() - g.den() * y.center();
  std::vector<std::pair<BerkPoint, int>> pts;
  if (P.is_zero()) throw std::logic_error("preimage divisor degenerate");
  // clusters deep enough to classify their direction at S
  RootPolicy pol;
  QQ t = at_.t().value();
  pol.min_err = std::max(QQ(8), QQ(abs(t) + 4));
  for (const auto& cl : padic_roots(P, pol))
    pts.emplace_back(BerkPoint::type1(cl.center), cl.mult);
  int inf_mult = g.degree() - P.deg();
  if (inf_mult > 0) pts.emplace_back(BerkPoint::infinity(ctx), inf_mult);
  std::vector<std::pair<P1Fp, int>> masses;
  auto bump = [&](const P1Fp& v, int m) {
    for (auto& [vv, mm] : masses)
      if (vv == v) {
        mm += m;
        return;
      }
    masses.emplace_back(v, m);
  };
  for (const auto& [pt, m] : pts) bump(direction_toward(at_, pt), m);
  cache_.emplace_back(key, masses);
  return masses;
}

std::vector<std::pair<P1Fp, int>> fixed_divisor_direction_masses(
    const RationalMapRep& f, const BerkPoint& S) {
  auto [P, inf_mult] = f.fixed_point_divisor();
  RootPolicy pol;
  QQ t = S.t().value();
  pol.min_err = std::max(QQ(8), QQ(abs(t) + 4));
  std::vector<std::pair<P1Fp, int>> masses;
  auto bump = [&](const P1Fp& v, int m) {
    for (auto& [vv, mm] : masses)
      if (vv == v) {
        mm += m;
        return;
      }
    masses.emplace_back(v, m);
  };
  for (const auto& cl : padic_roots(P, pol))
    bump(direction_toward(S, BerkPoint::type1(cl.center)), cl.mult);
  if (inf_mult > 0)
    bump(direction_toward(S, BerkPoint::infinity(S.context())), inf_mult);
  return masses;
}

int DegreeData::surplus_degree(const P1Fp& v) const {
  long p = f_.context().p;
  P1Fp fv = tangent_image(v);
  // any measured class different from the tangent image removes the m_v term
  P1Fp w = P1Fp::infinity();
  if (fv.inf) w = P1Fp::finite(0, p);
  for (const auto& [vv, m] : preimage_direction_masses(w))
    if (vv == v) return m;
  return 0;
}

int DegreeData::pullback_mass(const BerkPoint& S0, const P1Fp& v) const {
  if (S0 == image_) return surplus_degree(v);
  P1Fp w0 = direction_toward(image_, S0);
  for (const auto& [vv, m] : preimage_direction_masses(w0))
    if (vv == v) return m;
  return 0;
}

int local_degree(const RationalMapRep& f, const BerkPoint& S) {
  return DegreeData(f, S).local_degree();
}

}  // namespace berk
