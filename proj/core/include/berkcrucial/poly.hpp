#pragma once

#include <vector>

#include "berkcrucial/tower.hpp"

namespace berk {

/// Dense polynomial over the tower field Q(pi).
class Poly {
 public:
  Poly() = default;
  Poly(TowerContext ctx, std::vector<TowerElem> coeffs);
  static Poly zero(const TowerContext& ctx) { return Poly(ctx, {}); }
  static Poly constant(const TowerElem& c);
  static Poly from_rationals(const TowerContext& ctx, const std::vector<QQ>& cs);

  const TowerContext& context() const { return ctx_; }
  int deg() const { return static_cast<int>(c_.size()) - 1; }  // -1 if zero
  bool is_zero() const { return c_.empty(); }
  TowerElem coeff(int i) const;
  const std::vector<TowerElem>& coeffs() const { return c_; }

  TowerElem eval(const TowerElem& x) const;
  Poly derivative() const;
  /// P(a + z) by exact recentering.
  Poly shift(const TowerElem& a) const;
  /// P(c * z)
  Poly scale_arg(const TowerElem& c) const;
  Poly embed(const TowerContext& finer) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const TowerElem& c) const;
  /// (quotient, remainder); divisor nonzero.
  std::pair<Poly, Poly> divmod(const Poly& o) const;

  /// Monic gcd by the Euclidean algorithm (exact over the field).
  static Poly gcd(Poly a, Poly b);

  /// Yun squarefree decomposition: returns pairs (Q_i, i) with P = c * prod
  /// Q_i^i, the Q_i squarefree and pairwise coprime.
  std::vector<std::pair<Poly, int>> squarefree_decomposition() const;

  std::string str() const;

 private:
  TowerContext ctx_{2, 1};
  std::vector<TowerElem> c_;  // trimmed: back() != 0 when nonempty
  void trim();
  static void align(Poly& a, Poly& b);
};

}  // namespace berk
