#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../tests/helpers.hpp"

using namespace berk;
using namespace berk::testing;

namespace {
const TowerContext C5{5, 1};
BerkPoint pt2(long a, QQ t) { return BerkPoint::type2(TowerElem(C5, QQ(a)), t); }
BerkPoint pt1(long a) { return BerkPoint::type1(TowerElem(C5, QQ(a))); }
}  // namespace

TEST_CASE("span of standard point sets") {
  // {0, 1, inf}: tripod with center at the Gauss point
  FiniteTree T =
      FiniteTree::span({pt1(0), pt1(1), BerkPoint::infinity(C5)});
  CHECK(T.vertices().size() == 4);
  int g = T.find(BerkPoint::gauss(C5));
  REQUIRE(g >= 0);
  CHECK(T.valency(g) == 3);
  CHECK(T.endpoints().size() == 3);
  // {S} alone: trivial
  CHECK(FiniteTree::span({pt2(0, QQ(1))}).trivial());
  // {0, p, inf}: path through zeta(0;1) and the Gauss point
  FiniteTree P =
      FiniteTree::span({pt1(0), pt1(5), BerkPoint::infinity(C5)});
  CHECK(P.find(pt2(0, QQ(1))) >= 0);
  CHECK(P.find(BerkPoint::gauss(C5)) == -1);  // degree-2 chain not created
}

TEST_CASE("retraction") {
  FiniteTree T =
      FiniteTree::span({pt1(0), pt1(1), BerkPoint::infinity(C5)});
  // point on the tree retracts to itself
  CHECK(retract_to_tree(pt2(0, QQ(5)), T) == pt2(0, QQ(5)));
  // v(2 - {0,1}) = 0, so zeta(2;3) retracts to the Gauss point
  CHECK(retract_to_tree(pt2(2, QQ(3)), T) == BerkPoint::gauss(C5));
  std::mt19937 rng(3);
  for (int i = 0; i < 40; ++i) {
    BerkPoint S = random_point(rng, 5);
    BerkPoint r = retract_to_tree(S, T);
    CHECK(retract_to_tree(r, T) == r);  // idempotent
    CHECK(T.contains(r));
  }
}

TEST_CASE("valency measure") {
  FiniteTree seg = FiniteTree::span({pt2(0, QQ(0)), pt2(0, QQ(3))});
  TreeMeasure nu = valency_measure(seg);
  CHECK(nu.at(pt2(0, QQ(0))) == QQ(1, 2));
  CHECK(nu.at(pt2(0, QQ(3))) == QQ(1, 2));
  CHECK(nu.total() == 1);
  FiniteTree tri =
      FiniteTree::span({pt1(0), pt1(1), BerkPoint::infinity(C5)});
  TreeMeasure nut = valency_measure(tri);
  CHECK(nut.at(BerkPoint::gauss(C5)) == QQ(-1, 2));
  CHECK(nut.at(pt1(0)) == QQ(1, 2));
  CHECK(nut.total() == 1);
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    std::vector<BerkPoint> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(random_point(rng, 5));
    FiniteTree T = FiniteTree::span(pts);
    if (T.trivial()) continue;
    CHECK(valency_measure(T).total() == 1);
  }
}

TEST_CASE("laplacian of a distance function reproduces endpoint masses") {
  // phi = -rho(S0, .) on [S0, S1] has Laplacian delta_{S1} - delta_{S0}
  BerkPoint S0 = pt2(0, QQ(0)), S1 = pt2(0, QQ(3));
  FiniteTree seg = FiniteTree::span({S0, S1});
  EdgeProfiler gen = [&](const BerkPoint& A, const BerkPoint& B) {
    SegmentPLF d = distance_profile(S0, A, B);
    for (auto& piece : d.pieces) piece.f = -piece.f;
    return d;
  };
  std::vector<TreePLF> built = build_profiled(seg, {gen});
  TreeMeasure mu = tree_laplacian(built[0]);
  CHECK(mu.at(S1) == QQ(1));
  CHECK(mu.at(S0) == QQ(-1));
  CHECK(mu.total() == 0);
  // constant function: zero measure
  EdgeProfiler cgen = [&](const BerkPoint& A, const BerkPoint& B) {
    SegmentPLF d = distance_profile(S0, A, B);
    for (auto& piece : d.pieces) piece.f = piece.f.scaled(QQ(0));
    return d;
  };
  TreeMeasure z = tree_laplacian(build_profiled(seg, {cgen})[0]);
  CHECK(z.total_variation() == 0);
}

TEST_CASE("laplacian total mass vanishes for any PLF") {
  std::mt19937 rng(7);
  for (int i = 0; i < 15; ++i) {
    std::vector<BerkPoint> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(random_point(rng, 5));
    FiniteTree T = FiniteTree::span(pts);
    if (T.trivial()) continue;
    BerkPoint S0 = random_point(rng, 5);
    EdgeProfiler gen = [&](const BerkPoint& A, const BerkPoint& B) {
      return distance_profile(S0, A, B);
    };
    TreeMeasure mu = tree_laplacian(build_profiled(T, {gen})[0]);
    CHECK(mu.total() == 0);
  }
}

TEST_CASE("laplacian retraction compatibility") {
  std::mt19937 rng(9);
  int done = 0;
  for (int i = 0; i < 40 && done < 15; ++i) {
    std::vector<BerkPoint> pts;
    for (int k = 0; k < 5; ++k) pts.push_back(random_point(rng, 5));
    FiniteTree T = FiniteTree::span(pts);
    if (T.trivial()) continue;
    // subtree from a subset of the generators
    FiniteTree Tsub = FiniteTree::span({pts[0], pts[1], pts[2]});
    if (Tsub.trivial()) continue;
    ++done;
    BerkPoint S0 = random_point(rng, 5);
    EdgeProfiler gen = [&](const BerkPoint& A, const BerkPoint& B) {
      return distance_profile(S0, A, B);
    };
    TreeMeasure big = tree_laplacian(build_profiled(T, {gen})[0]);
    TreeMeasure small = tree_laplacian(build_profiled(Tsub, {gen})[0]);
    TreeMeasure pushed = big.pushforward_retract(Tsub);
    CHECK((small - pushed).total_variation() == 0);
  }
  CHECK(done >= 15);
}

TEST_CASE("nu_f_gamma fixtures and route independence") {
  RationalMapRep f = z_pow2(5);
  FiniteTree T =
      FiniteTree::span({pt1(0), pt1(1), BerkPoint::infinity(C5)});
  TreeMeasure nu = nu_f_gamma(f, T, BerkPoint::gauss(C5));
  CHECK(nu.total() == 1);
  CHECK(nu.at(BerkPoint::gauss(C5)) == QQ(1));
  // geometric route agrees, for several base points
  std::mt19937 rng(11);
  for (int i = 0; i < 5; ++i) {
    BerkPoint S0 = random_point(rng, 5);
    TreeMeasure nug = nu_f_gamma(f, T, S0, NuRoute::Geometric);
    CHECK((nug - nu).total_variation() == 0);
  }
  // pz^2 on the span of its fixed points: atom at zeta(0;-1)
  RationalMapRep g = pz2(5);
  FiniteTree Tg = FiniteTree::span(fixed_points(g));
  TreeMeasure nug = nu_f_gamma(g, Tg, BerkPoint::gauss(C5));
  CHECK(nug.total() == 1);
  CHECK(nug.at(pt2(0, QQ(-1))) == QQ(1));
}

TEST_CASE("nu_f_gamma integrality and atom bound on random trees") {
  std::mt19937 rng(13);
  int done = 0;
  for (int i = 0; i < 60 && done < 20; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, 5, d);
    std::vector<BerkPoint> pts;
    for (int k = 0; k < 3; ++k) pts.push_back(random_point(rng, 5));
    FiniteTree T = FiniteTree::span(pts);
    if (T.trivial()) continue;
    ++done;
    TreeMeasure nu = nu_f_gamma(f, T, BerkPoint::gauss(C5));
    CHECK(nu.total() == 1);
    for (const auto& [pt, m] : nu.atoms()) {
      QQ w = m * QQ(d - 1);
      CHECK(w.get_den() == 1);
      CHECK(w >= -1);
    }
    // independence of the base point
    BerkPoint S0 = random_point(rng, 5);
    TreeMeasure nu2 = nu_f_gamma(f, T, S0);
    CHECK((nu2 - nu).total_variation() == 0);
  }
  CHECK(done >= 20);
}

TEST_CASE("barycenter") {
  BerkPoint A = pt2(0, QQ(0)), B = pt2(0, QQ(4));
  FiniteTree seg = FiniteTree::span({A, B});
  TreeMeasure half;
  half.add(A, QQ(1, 2));
  half.add(B, QQ(1, 2));
  BarycenterResult r = barycenter(half, seg);
  CHECK(r.extremes.size() == 2);
  TreeMeasure skew;
  skew.add(A, QQ(1, 4));
  skew.add(B, QQ(3, 4));
  BarycenterResult r2 = barycenter(skew, seg);
  REQUIRE(r2.extremes.size() == 1);
  CHECK(r2.extremes[0] == B);
  // tripod with equal masses at the leaves: the center
  FiniteTree tri = FiniteTree::span({pt2(0, QQ(2)), pt2(1, QQ(2)), pt2(0, QQ(-2))});
  TreeMeasure third;
  third.add(pt2(0, QQ(2)), QQ(1, 3));
  third.add(pt2(1, QQ(2)), QQ(1, 3));
  third.add(pt2(0, QQ(-2)), QQ(1, 3));
  BarycenterResult r3 = barycenter(third, tri);
  REQUIRE(r3.extremes.size() == 1);
  CHECK(r3.extremes[0] == BerkPoint::gauss(C5));
}
