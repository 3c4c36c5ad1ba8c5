#pragma once

#include "berkcrucial/berk_point.hpp"
#include "berkcrucial/plf.hpp"

namespace berk {

enum class ProfileKind {
  Wedge,           // S -> rho(S, f(S) /\_{S0} S)
  Potential,       // S -> int rho(S0, S /\_{S0} .) d(f* delta_{S0})
  Crucial,         // S -> Crucial_f(S)            (S0 ignored)
  ImageDistGauss,  // S -> rho(S_can, f(S))        (S0 ignored)
  Displacement,    // S -> rho(S, f(S))            (S0 ignored)
  DistanceTo,      // S -> rho(S, S0); f ignored
};

/// One maximal subpath of a segment on which the center can be held fixed;
/// points are zeta(center; x) for x in the stated range.
struct ProfilePiece {
  TowerElem center;
  bool lo_inf = false, hi_inf = false;
  QQ x_lo, x_hi;
  bool arc_up = true;  // arc direction: increasing x or not
  Plf f;               // exact profile as a function of x
};

/// Exact piecewise-linear profile along the path [a, b].
class SegmentPLF {
 public:
  BerkPoint a, b;
  std::vector<ProfilePiece> pieces;  // in arc order from a to b

  /// Directional derivative into the segment at an endpoint.
  QQ slope_from_a() const;
  QQ slope_from_b() const;
  /// All interior profile breakpoints (and the path's turning point), as
  /// Berkovich points.
  std::vector<BerkPoint> interior_breakpoints() const;
  /// Value at a type II point lying on the segment.
  QQ value_at(const BerkPoint& P) const;
  ExtValue length() const;
  /// Minimum over the segment: value plus the argmin subsegment [lo, hi].
  struct MinResult {
    QQ value;
    BerkPoint arg_lo, arg_hi;
  };
  MinResult minimum() const;
};

/// Exact profile of the requested quantity along [A, B].  S0 must be type II
/// for kinds that use it;  a segment endpoint may be type I (infinite tail,
/// stored with the eventual constant slope).
SegmentPLF edge_profile(ProfileKind kind, const RationalMapRep& f,
                        const BerkPoint& S0, const BerkPoint& A,
                        const BerkPoint& B);

/// rho(., S0) profile without a map.
SegmentPLF distance_profile(const BerkPoint& S0, const BerkPoint& A,
                            const BerkPoint& B);

/// Crucial_f at a single type II point (exact rational, log-p units).
QQ crucial_at(const RationalMapRep& f, const BerkPoint& S);

/// -log_p of the T-potential of the minimal lift at S: equals
/// -(potential profile) pointwise and vanishes at the Gauss point.
QQ t_potential(const RationalMapRep& f, const BerkPoint& S);

}  // namespace berk
