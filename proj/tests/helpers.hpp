#pragma once

#include <random>

#include "berkcrucial/crucial.hpp"

namespace berk::testing {

inline RationalMapRep make_map(long p, std::vector<QQ> num, std::vector<QQ> den) {
  TowerContext ctx{p, 1};
  return RationalMapRep::from_polys(Poly::from_rationals(ctx, num),
                                    Poly::from_rationals(ctx, den));
}

inline RationalMapRep z_pow2(long p) { return make_map(p, {0, 0, 1}, {1}); }

inline RationalMapRep pz2(long p) { return make_map(p, {0, 0, QQ(p)}, {1}); }

/// z^2 + c
inline RationalMapRep z2_plus(long p, const QQ& c) {
  return make_map(p, {c, 0, 1}, {1});
}

/// Random degree-d map over Q_p with small coefficients (val in {-1,0,1});
/// resamples until nondegenerate with the requested degree.
inline RationalMapRep random_map(std::mt19937& rng, long p, int d) {
  static const long nums[] = {0, 1, -1, 2, -2, 3, -3, 1};
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::vector<QQ> nc(d + 1), dc(d + 1);
    auto coeff = [&]() {
      QQ q(nums[rng() % 8]);
      switch (rng() % 4) {
        case 0: q *= p; break;
        case 1: q /= p; break;
        default: break;
      }
      return q;
    };
    for (auto& c : nc) c = coeff();
    for (auto& c : dc) c = coeff();
    try {
      RationalMapRep f = make_map(p, nc, dc);
      if (f.degree() == d) return f;
    } catch (const InputError&) {
    }
  }
  throw std::logic_error("random_map: could not sample a nondegenerate map");
}

/// Random type II point with center in {0..p} and small rational t.
inline BerkPoint random_point(std::mt19937& rng, long p) {
  TowerContext ctx{p, 1};
  long a = static_cast<long>(rng() % (p + 1));
  static const QQ ts[] = {QQ(-2), QQ(-1),     QQ(0),      QQ(1),
                          QQ(2),  QQ(1, 2),   QQ(-1, 2)};
  QQ t = ts[rng() % 7];
  return BerkPoint::type2(TowerElem(ctx, QQ(a)), t);
}

}  // namespace berk::testing
