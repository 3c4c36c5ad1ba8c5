#pragma once

#include <string>
#include <vector>

#include "berkcrucial/errors.hpp"

namespace berk {

/// Dense polynomial over F_p, coefficients in [0, p).
struct FpPoly {
  long p = 2;
  std::vector<long> c;  // c[i] * z^i

  static FpPoly zero(long p) { return FpPoly{p, {}}; }
  int deg() const;  // -1 for the zero polynomial
  bool is_zero() const { return deg() < 0; }
  void trim();
  long eval(long x) const;
  FpPoly derivative() const;
  std::string str() const;
};

FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
/// (quotient, remainder)
std::pair<FpPoly, FpPoly> fp_divmod(const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic gcd
/// Order of vanishing at x, by shift-and-divide.
int fp_ord_at(const FpPoly& f, long x);

/// A point of P^1(F_p).
struct P1Fp {
  bool inf = false;
  long r = 0;  // class in [0, p) when finite

  static P1Fp infinity() { return P1Fp{true, 0}; }
  static P1Fp finite(long r, long p) { return P1Fp{false, ((r % p) + p) % p}; }
  bool operator==(const P1Fp& o) const { return inf == o.inf && (inf || r == o.r); }
  bool operator!=(const P1Fp& o) const { return !(*this == o); }
  std::string str() const { return inf ? "inf" : std::to_string(r); }
};

/// A rational map over F_p in homogeneous coordinates [G0 : G1] with the
/// convention z = p1/p0; the pair is coprime of common degree deg().
/// Degree 0 means a constant map (degenerate reduction).
class ResidueMap {
 public:
  /// Build from possibly non-coprime homogeneous coefficient vectors of formal
  /// degree d (index = power of p1); cancels the homogeneous gcd.
  ResidueMap(long p, std::vector<long> g0, std::vector<long> g1);

  long p() const { return p_; }
  int degree() const { return deg_; }
  bool is_identity() const;
  bool is_constant() const { return deg_ == 0; }

  P1Fp eval(const P1Fp& a) const;
  /// Local degree (multiplicity) of the map at a, by order of vanishing.
  int local_degree(const P1Fp& a) const;
  /// ord_a of the fixed point divisor [map = Id] at a in P^1(F_p).
  int fixed_order(const P1Fp& a) const;
  /// Total degree of [map = Id] over the algebraic closure: deg + 1 for a
  /// non-identity map of degree >= 1.
  int fixed_divisor_total() const;
  /// Degree of the part of the fibre over w that lies outside P^1(F_p)
  /// (zero exactly when the fibre is fully F_p-rational).
  int fibre_residual_degree(const P1Fp& w) const;

  /// Dehomogenized components (index = power of z).
  const FpPoly& num() const { return g1_; }  // z-image numerator
  const FpPoly& den() const { return g0_; }

  /// Homogeneous coefficient vectors after cancellation.
  const std::vector<long>& h0() const { return h0_; }
  const std::vector<long>& h1() const { return h1_; }

 private:
  long p_;
  int deg_;
  std::vector<long> h0_, h1_;  // homogeneous, coprime, degree deg_
  FpPoly g0_, g1_;             // dehomogenized at p0 = 1
};

}  // namespace berk
