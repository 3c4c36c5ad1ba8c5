#pragma once

#include "berkcrucial/fp.hpp"
#include "berkcrucial/poly.hpp"

namespace berk {

/// Pair of homogeneous degree-d forms (F0, F1) in (p0, p1), the lift of a
/// rational map under the convention pi(p0, p1) = p1/p0, so f = F1/F0.
/// Coefficient index = power of p1.
struct BiForm {
  int d = 1;
  TowerContext ctx{2, 1};
  std::vector<TowerElem> f0, f1;  // size d+1 each

  static BiForm from_polys(const Poly& num, const Poly& den, int d);
  Poly dehom0() const;  // F0(1, z)
  Poly dehom1() const;  // F1(1, z)
  BiForm embed(const TowerContext& finer) const;
  BiForm scaled(const TowerElem& c) const;
  /// Smallest coefficient valuation over both forms.
  ExtValue min_val() const;
};

/// Homogeneous resultant Res(F0, F1): determinant of the 2d x 2d Sylvester
/// matrix of the formal degree-d coefficient rows (fraction-free Bareiss).
TowerElem resultant(const BiForm& F);

/// Divide both forms by a uniformizer of the minimal coefficient valuation.
/// Returns the minimalized lift and the shift mu (the valuation divided out).
std::pair<BiForm, QQ> minimalize(const BiForm& F);

/// 2x2 matrix over the tower with nonzero determinant, acting on (p0, p1)^T;
/// the induced map on z = p1/p0 sends z to (m10 + m11 z)/(m00 + m01 z).
/// H_{a,b} = [[1,0],[a,b]] realizes z -> a + b z.
struct Mobius {
  TowerElem m00, m01, m10, m11;

  static Mobius identity(const TowerContext& ctx);
  static Mobius affine(const TowerElem& a, const TowerElem& b);  // z -> a + b z
  static Mobius inversion(const TowerContext& ctx);              // z -> 1/z
  Mobius adjugate() const;
  Mobius compose(const Mobius& inner) const;  // this o inner
  TowerElem det() const;
  TowerContext context() const { return m00.context(); }
};

class RationalMapRep {
 public:
  /// Builds from any nondegenerate lift; stores the minimalized lift and
  /// caches v(Res) and the reduction over F_p.
  explicit RationalMapRep(BiForm lift);
  static RationalMapRep from_polys(const Poly& num, const Poly& den);

  int degree() const { return lift_.d; }
  const BiForm& lift() const { return lift_; }
  const TowerContext& context() const { return lift_.ctx; }
  /// v(Res of the minimal lift), a nonnegative rational in log-p units.
  const QQ& vres_min() const { return vres_; }
  const ResidueMap& reduction() const { return reduction_; }

  Poly num() const { return lift_.dehom1(); }
  Poly den() const { return lift_.dehom0(); }

  /// Lift of h^{-1} o f o h computed as adj(M) o F o M, minimalized.
  RationalMapRep conjugate(const Mobius& M) const;
  /// Lift of f^n by homogeneous composition (default cap d^n <= 64).
  RationalMapRep iterate(int n, long degree_cap = 64) const;

  /// Numerator of f(z) - z and the multiplicity of infinity in [f = Id];
  /// total degree d + 1.
  std::pair<Poly, int> fixed_point_divisor() const;

  /// v(f^#(a)) of the chordal derivative at a type I point (finite a, or
  /// infinity when a_inf). +infinity encodes f^#(a) = 0.
  ExtValue chordal_derivative_val(const TowerElem& a, bool a_inf = false) const;

  RationalMapRep embed(const TowerContext& finer) const;

 private:
  BiForm lift_;  // minimal
  QQ vres_;
  ResidueMap reduction_;

  static ResidueMap reduce(const BiForm& minimal_lift);
};

/// Compose the lift with a Mobius matrix on each side: A o F o B.
BiForm sandwich(const Mobius& A, const BiForm& F, const Mobius& B);

}  // namespace berk
