#pragma once

#include "berkcrucial/poly.hpp"

namespace berk {

/// A certified root cluster: the true root lies within p^(-err_t) of center.
/// Distinct clusters are separated: v(center_i - center_j) < min(err_i, err_j).
struct RootCluster {
  TowerElem center;
  ExtValue err_t;  // +infinity for exact roots
  int mult = 1;
};

struct RootPolicy {
  QQ min_err = QQ(8);  // refine simple clusters at least this deep
  int max_newton_steps = 200;
};

/// Certified root clusters of P over the tower (ramification auto-extended).
/// Throws UnsupportedResidueExtension when a residual factor is irreducible of
/// degree > 1 over F_p.  Multiplicities sum to deg P.
std::vector<RootCluster> padic_roots(const Poly& P, const RootPolicy& policy = {});

}  // namespace berk
