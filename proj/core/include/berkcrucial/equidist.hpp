#pragma once

#include "berkcrucial/crucial.hpp"

namespace berk {

/// (r_{P^1,Gamma})_* ((f^n)* delta_{S0}): exact atomic measure of total mass
/// d^n, computed from potential-profile slopes alone (no explicit preimages).
TreeMeasure retracted_pullback(const RationalMapRep& f, int n,
                               const BerkPoint& S0, const FiniteTree& T,
                               long degree_cap = 64);

/// Certified upper bound for C_{S0,f} = sup_S int rho(S0, S /\_{S0} .)
/// d(f* delta_{S0}): the resultant bound of the S0-conjugated minimal lift.
QQ c_constant_bound(const RationalMapRep& f, const BerkPoint& S0);

/// Experimental sharp value: max of the potential over the span of the type I
/// preimages of two points of the S0-disk.  Relies on an unproved span claim;
/// the resultant bound remains the sound default.
QQ c_constant_exact_experimental(const RationalMapRep& f, const BerkPoint& S0);

/// Certified bracket for int phi d(mu_f): value from the n-th normalized
/// pullback plus a telescope tail bound.
struct MuBracket {
  QQ value;
  QQ err;  // |int phi d mu_f - value| <= err
};
MuBracket mu_integral(const RationalMapRep& f, const TreePLF& phi, int n,
                      const BerkPoint& S0, long degree_cap = 64);

/// Evaluate a tree PLF at the retraction of an arbitrary point (realizes the
/// retraction-pullback test class of the equidistribution statement).
QQ tree_plf_value(const TreePLF& phi, const BerkPoint& P);

struct EquidistRecord {
  int n = 1;
  QQ nu_integral;       // int phi d nu_{f^n} (exact)
  QQ mu_value, mu_err;  // bracket for int phi d mu_f
  QQ lhs_lo, lhs_hi;    // bracket for |int phi d(nu_{f^n} - mu_f)|
  QQ rhs;               // quantitative bound
  bool holds = false;   // lhs_hi <= rhs
};

/// Verify the quantitative equidistribution inequality for the test function
/// phi (a retraction-pullback PLF on the type II tree Gamma = phi.tree).
EquidistRecord quantitative_check(const RationalMapRep& f, int n,
                                  const TreePLF& phi, const BerkPoint& S0,
                                  long degree_cap = 64);

/// Default test functions: phi = max(0, R - rho(r_Gamma(.), S*)).
TreePLF default_test_function(const FiniteTree& T, const BerkPoint& Sstar,
                              const QQ& R);

}  // namespace berk
