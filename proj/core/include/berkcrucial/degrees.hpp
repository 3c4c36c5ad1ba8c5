#pragma once

#include "berkcrucial/berk_point.hpp"
#include "berkcrucial/roots.hpp"

namespace berk {

/// Local behaviour of the map at a type II point: the reduction of the
/// conjugated map realizes the tangent action, its degree is the local
/// degree, and its multiplicities are the directional degrees.
class DegreeData {
 public:
  DegreeData(const RationalMapRep& f, const BerkPoint& S);

  const BerkPoint& at() const { return at_; }
  const BerkPoint& image() const { return image_; }
  bool fixed() const { return fixed_; }
  int local_degree() const { return reduced_.degree(); }
  /// Reduction of psi o f o phi^{-1} (phi: S -> Gauss, psi: f(S) -> Gauss);
  /// psi = phi when S is fixed.
  const ResidueMap& reduced() const { return reduced_; }

  /// Tangent map on directions, as residue classes at S and f(S).
  P1Fp tangent_image(const P1Fp& v) const { return reduced_.eval(v); }
  /// Directional local degree m_v.
  int directional_degree(const P1Fp& v) const { return reduced_.local_degree(v); }

  /// Surplus local degree s_v: the pullback mass every point acquires in U_v
  /// regardless of the tangent direction.
  int surplus_degree(const P1Fp& v) const;

  /// (f* delta_{S0})(U_v) for a direction at S.
  int pullback_mass(const BerkPoint& S0, const P1Fp& v) const;

  /// Divisor of f^{-1}(y) split by direction at S, for the type I point with
  /// residue class w in the psi-chart at f(S); mass map is per direction at S
  /// (aggregate over its support only).  Exposed for the identity checks.
  std::vector<std::pair<P1Fp, int>> preimage_direction_masses(
      const P1Fp& w_at_image) const;

  const RationalMapRep& map() const { return f_; }
  const Mobius& phi() const { return phi_; }
  const Mobius& psi() const { return psi_; }

 private:
  RationalMapRep f_;
  BerkPoint at_, image_;
  bool fixed_;
  Mobius phi_, psi_;
  ResidueMap reduced_;
  mutable std::vector<std::pair<int, std::vector<std::pair<P1Fp, int>>>> cache_;
};

int local_degree(const RationalMapRep& f, const BerkPoint& S);

/// Direction-split masses at S of the fixed point divisor [f = Id].
std::vector<std::pair<P1Fp, int>> fixed_divisor_direction_masses(
    const RationalMapRep& f, const BerkPoint& S);

}  // namespace berk
