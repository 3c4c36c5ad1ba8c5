#pragma once

#include "berkcrucial/ratmap.hpp"

namespace berk {

/// A point of the Berkovich projective line: a type I point (a classical
/// point, possibly infinity) or a type II point zeta(a; t), the disk of
/// radius p^{-t} around a.  Every type II point of the line has a finite
/// center, so no chart flag is needed for type II.
class BerkPoint {
 public:
  BerkPoint() : c_(), t_(QQ(0)), inf_(false) {}  // Gauss point of Q_2
  static BerkPoint type1(TowerElem a) { return BerkPoint(std::move(a), ExtValue::infinity(), false); }
  static BerkPoint infinity(const TowerContext& ctx) {
    return BerkPoint(TowerElem::zero(ctx), ExtValue::infinity(), true);
  }
  static BerkPoint type2(TowerElem center, QQ t) {
    return BerkPoint(std::move(center), ExtValue(std::move(t)), false);
  }
  static BerkPoint gauss(const TowerContext& ctx) {
    return type2(TowerElem::zero(ctx), QQ(0));
  }

  bool is_type1() const { return t_.is_infinity(); }
  bool is_type2() const { return !t_.is_infinity(); }
  bool is_infinity() const { return inf_; }
  const TowerElem& center() const { return c_; }
  const ExtValue& t() const { return t_; }
  const TowerContext& context() const { return c_.context(); }

  /// Canonical representative: center truncated below t.
  BerkPoint normal_form() const;
  bool operator==(const BerkPoint& o) const;
  bool operator!=(const BerkPoint& o) const { return !(*this == o); }

  /// Stable string key of the normal form (for ordered containers).
  std::string key() const;
  std::string str() const;

 private:
  BerkPoint(TowerElem c, ExtValue t, bool inf)
      : c_(std::move(c)), t_(std::move(t)), inf_(inf) {}
  TowerElem c_;
  ExtValue t_;
  bool inf_;
};

/// v(a - b) for the centers of two non-infinity points (+inf if equal).
ExtValue center_dist_val(const BerkPoint& A, const BerkPoint& B);

/// The point S /\_{S0} S': the median of {S, S', S0} in the tree.
BerkPoint join(const BerkPoint& S, const BerkPoint& Sp, const BerkPoint& S0);

/// Hyperbolic distance in log-p units; +infinity unless both are type II
/// (or equal).
ExtValue rho(const BerkPoint& S, const BerkPoint& Sp);

/// -log_p [S, S']_can >= 0 (canonical Hsia kernel).
ExtValue hsia_can(const BerkPoint& S, const BerkPoint& Sp);

/// Newton-polygon evaluation of -log_p |P|_S at a type II (or type I) point.
ExtValue gauss_val(const Poly& P, const BerkPoint& S);

/// gauss_val(num) - gauss_val(den) for a nonzero rational function.
ExtValue seminorm_val(const Poly& num, const Poly& den, const BerkPoint& S);

/// Image of a point under the map.  For type II points the center digits are
/// extracted by exact valuation-jump descent, which terminates with the
/// canonical image representation; a pole at the stored center never hurts
/// since only lift seminorms are used.
BerkPoint map_image(const RationalMapRep& f, const BerkPoint& S);

/// Action of a Mobius transformation on a point (exact).
BerkPoint mobius_image(const Mobius& M, const BerkPoint& S);

/// Affine map sending the Gauss point to the given type II point, as in
/// z -> a + b z with v(b) = t (context auto-extended for t).
Mobius gauss_to(const BerkPoint& S2);

/// A tangent direction at a type II point, identified with a class in
/// P^1(F_p) through the chart gauss_to(base).
struct Direction {
  BerkPoint base;
  P1Fp cls;
};

/// Residue class of the direction at the type II point S toward X (X != S).
P1Fp direction_toward(const BerkPoint& S, const BerkPoint& X);

/// A representative point one log-p step into the branch U_v at S.
BerkPoint direction_rep(const BerkPoint& S, const P1Fp& v);

}  // namespace berk
