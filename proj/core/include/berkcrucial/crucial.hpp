#pragma once

#include "berkcrucial/degrees.hpp"
#include "berkcrucial/tree.hpp"

namespace berk {

/// -log |Res(minimal lift of h^{-1} o f o h)| with h(S_can) = S.
QQ ordres_direct(const RationalMapRep& f, const BerkPoint& S);

/// 2 d (d-1) Crucial_f(S) + v(Res of the minimal lift of f); agrees with
/// ordres_direct exactly.
QQ ordres_via_formula(const RationalMapRep& f, const BerkPoint& S);

/// Directional derivative of Crucial_f at S toward a target point / class.
QQ crucial_slope(const RationalMapRep& f, const BerkPoint& S,
                 const BerkPoint& toward);
QQ crucial_slope(const RationalMapRep& f, const BerkPoint& S, const P1Fp& v);

/// rho(S, f(S) /\_can S) at a type II point.
QQ wedge_at(const RationalMapRep& f, const BerkPoint& S);

/// Fixed points of f in P^1 (cluster centers, plus infinity when fixed),
/// with multiplicities dropped.
std::vector<BerkPoint> fixed_points(const RationalMapRep& f);

/// The crucial tree: span of Fix(f) and the type II fixed points of local
/// degree > 1.  Built from the candidate tree spanned by Fix(f) and one
/// auxiliary preimage divisor, whose positive crucial-measure atoms are then
/// tested for being fixed of higher local degree.
FiniteTree crucial_tree(const RationalMapRep& f);

struct CrucialMeasure {
  FiniteTree tree;  // Gamma_FR
  TreeMeasure nu;   // nu_f, probability, at most d-1 type II atoms
  std::vector<std::pair<BerkPoint, long>> weights;  // w_f on its support
};

/// nu_f and w_f; every atom is cross-checked against the direct local case
/// formula (local degree / tangent-direction counts).
CrucialMeasure crucial_measure(const RationalMapRep& f);

struct MinResLocResult {
  std::vector<BerkPoint> locus;  // one or two type II extreme points
  QQ min_value;                  // min of ordRes_f (log-p units)
};

/// Minimum locus of ordRes_f, computed twice: exact convex minimization of
/// the crucial profile over span(Gamma_FR, S_can), and the barycenter of
/// nu_f; the two must agree.
MinResLocResult minresloc(const RationalMapRep& f);

bool is_potentially_good(const RationalMapRep& f);

struct DiamBounds {
  // 2 vres - ((d-1) rho(S,S_can) + 2 rho(S, f(S)/\S)) over MinResLoc extremes
  std::vector<QQ> minresloc_slack;
  // vres - (rho(S,S_can) + rho(S, f(S)/\S)) over crucial-tree vertices (d>2)
  std::vector<QQ> crucialtree_slack;
  bool ok = true;
};
DiamBounds check_diam_bounds(const RationalMapRep& f);

struct CrucialReport {
  long p = 2;
  int degree = 2;
  QQ vres_min;
  CrucialMeasure cm;
  MinResLocResult mrl;
  bool potentially_good = false;
  DiamBounds diam;
};
CrucialReport full_report(const RationalMapRep& f);

}  // namespace berk
