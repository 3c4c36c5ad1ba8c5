#pragma once

#include <vector>

#include "berkcrucial/errors.hpp"
#include "berkcrucial/rational.hpp"

namespace berk {

/// The totally ramified tower Q(pi), pi^e = p.  All valuations are normalized
/// so that v(p) = 1; the value group of the context is (1/e)Z.
struct TowerContext {
  long p = 2;
  int e = 1;

  bool operator==(const TowerContext& o) const { return p == o.p && e == o.e; }
  bool operator!=(const TowerContext& o) const { return !(*this == o); }

  /// Smallest common refinement of two contexts over the same prime.
  static TowerContext join(const TowerContext& a, const TowerContext& b);
  /// Context refined so that rationals with denominator den(t) are valuations.
  TowerContext extended_for(const QQ& t) const;
};

/// An exact element sum_i c_i pi^i of Q(pi), pi^e = p, with rational c_i.
///
/// The valuation of a nonzero element is min_i (v_p(c_i) + i/e); the minimum
/// is attained at exactly one index since the i/e residues mod 1 are distinct,
/// so val is exact and multiplicative.
class TowerElem {
 public:
  TowerElem() : ctx_{2, 1}, c_(1, 0) {}
  TowerElem(TowerContext ctx, QQ rational_value);
  TowerElem(TowerContext ctx, std::vector<QQ> coeffs);

  static TowerElem zero(const TowerContext& ctx) { return TowerElem(ctx, QQ(0)); }
  static TowerElem one(const TowerContext& ctx) { return TowerElem(ctx, QQ(1)); }
  /// pi of the context (equals p when e = 1).
  static TowerElem pi(const TowerContext& ctx);
  /// p^floor(t) * pi^((t - floor(t)) e); val = t.  Requires t*e integral.
  static TowerElem uniformizer(const TowerContext& ctx, const QQ& t);

  const TowerContext& context() const { return ctx_; }
  const std::vector<QQ>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// The rational value when all pi-coefficients above index 0 vanish.
  const QQ& rational_value() const;

  ExtValue val() const;

  /// Class of an integral element modulo the maximal ideal, as an element of
  /// F_p.  Throws NotIntegral when val < 0.
  long residue() const;

  /// Reinterpret in a finer context (e | e').  Valuations are preserved.
  TowerElem embed(const TowerContext& finer) const;

  /// Canonical truncation: keep exactly the digits of valuation < t.  The
  /// result represents the same closed disk of radius p^{-t}.
  TowerElem truncate_below(const QQ& t) const;

  TowerElem operator-() const;
  TowerElem operator+(const TowerElem& o) const;
  TowerElem operator-(const TowerElem& o) const;
  TowerElem operator*(const TowerElem& o) const;
  TowerElem operator/(const TowerElem& o) const;
  TowerElem inverse() const;
  TowerElem pow(long n) const;

  bool operator==(const TowerElem& o) const;
  bool operator!=(const TowerElem& o) const { return !(*this == o); }

  std::string str() const;

 private:
  TowerContext ctx_;
  std::vector<QQ> c_;  // size == ctx_.e

  static void align(TowerElem& a, TowerElem& b);
};

inline TowerElem operator*(const QQ& q, const TowerElem& x) {
  return TowerElem(x.context(), q) * x;
}

}  // namespace berk
