#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../tests/helpers.hpp"

using namespace berk;
using namespace berk::testing;

namespace {
const TowerContext C5{5, 1};
BerkPoint pt2(long a, QQ t) { return BerkPoint::type2(TowerElem(C5, QQ(a)), t); }
}  // namespace

TEST_CASE("worked fixture: z^2") {
  RationalMapRep f = z_pow2(5);
  BerkPoint scan = BerkPoint::gauss(C5);
  CHECK(ordres_direct(f, scan) == 0);
  CHECK(crucial_at(f, scan) == 0);
  CHECK(ordres_direct(f, pt2(0, QQ(1))) == QQ(2));
  CHECK(ordres_direct(f, pt2(0, QQ(-1))) == QQ(2));
  CHECK(crucial_at(f, pt2(0, QQ(1))) == QQ(1, 2));
  CHECK(crucial_at(f, pt2(0, QQ(-1))) == QQ(1, 2));
  CrucialMeasure cm = crucial_measure(f);
  CHECK(cm.nu.at(scan) == QQ(1));
  CHECK(cm.nu.total() == 1);
  REQUIRE(cm.weights.size() == 1);
  CHECK(cm.weights[0].second == 1);
  MinResLocResult m = minresloc(f);
  REQUIRE(m.locus.size() == 1);
  CHECK(m.locus[0] == scan);
  CHECK(m.min_value == 0);
  CHECK(is_potentially_good(f));
}

TEST_CASE("worked fixture: p z^2") {
  RationalMapRep f = pz2(5);
  MinResLocResult m = minresloc(f);
  REQUIRE(m.locus.size() == 1);
  CHECK(m.locus[0] == pt2(0, QQ(-1)));
  CHECK(m.min_value == 0);
  CrucialMeasure cm = crucial_measure(f);
  REQUIRE(cm.weights.size() == 1);
  CHECK(cm.weights[0].first == pt2(0, QQ(-1)));
  CHECK(cm.weights[0].second == 1);
  CHECK(is_potentially_good(f));
  // crucial tree contains 0, infinity, fixed point 1/p and zeta(0;-1)
  FiniteTree G = crucial_tree(f);
  CHECK(G.find(pt2(0, QQ(-1))) >= 0);
  CHECK(G.find(BerkPoint::type1(TowerElem(C5, QQ(1, 5)))) >= 0);
}

TEST_CASE("crucial tree of z^2 is the tripod over its fixed points") {
  FiniteTree G = crucial_tree(z_pow2(5));
  CHECK(G.find(BerkPoint::gauss(C5)) >= 0);
  CHECK(G.find(BerkPoint::type1(TowerElem::zero(C5))) >= 0);
  CHECK(G.find(BerkPoint::type1(TowerElem::one(C5))) >= 0);
  CHECK(G.find(BerkPoint::infinity(C5)) >= 0);
  // endpoints are type I fixed points or type II
  for (int e : G.endpoints()) {
    const BerkPoint& P = G.vertices()[e];
    if (P.is_type1()) {
      BerkPoint img = map_image(z_pow2(5), P);
      CHECK(img == P);
    }
  }
}

TEST_CASE("potential bound by the resultant") {
  // -T_F(S) <= v(Res of the minimal lift) everywhere
  CHECK(t_potential(z_pow2(5), BerkPoint::gauss(C5)) == 0);
  CHECK(t_potential(pz2(5), BerkPoint::gauss(C5)) == 0);
  std::mt19937 rng(41);
  int done = 0;
  while (done < 100) {
    long p = (done % 3 == 0) ? 2 : ((done % 3 == 1) ? 3 : 5);
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, p, d);
    BerkPoint S = random_point(rng, p);
    CHECK(-t_potential(f, S) <= f.vres_min());
    ++done;
  }
  // iterates of minimal lifts keep nonnegative resultant valuations
  std::mt19937 rng2(43);
  for (int i = 0; i < 10; ++i) {
    RationalMapRep f = random_map(rng2, 3, 2);
    CHECK(f.iterate(2).vres_min() >= 0);
  }
}

TEST_CASE("type I endpoint atoms of nu_f_gamma") {
  // exact, non-fixed type I endpoint: atom -1/(d-1); fixed: no atom
  RationalMapRep f = z_pow2(5);
  BerkPoint two = BerkPoint::type1(TowerElem(C5, QQ(2)));
  FiniteTree seg = FiniteTree::span({two, BerkPoint::gauss(C5)});
  TreeMeasure nu = nu_f_gamma(f, seg, BerkPoint::gauss(C5));
  CHECK(nu.at(two) == QQ(-1));  // d - 1 = 1
  CHECK(nu.total() == 1);
  BerkPoint one = BerkPoint::type1(TowerElem::one(C5));
  FiniteTree seg2 = FiniteTree::span({one, BerkPoint::type2(TowerElem::one(C5), QQ(-1))});
  TreeMeasure nu2 = nu_f_gamma(f, seg2, BerkPoint::gauss(C5));
  CHECK(nu2.at(one) == 0);  // fixed type I points carry no atom
  CHECK(nu2.total() == 1);
}

TEST_CASE("ordres identity on the formula route") {
  RationalMapRep f = z_pow2(5);
  CHECK(ordres_via_formula(f, pt2(0, QQ(-1))) == QQ(2));
  CHECK(ordres_via_formula(f, BerkPoint::gauss(C5)) == 0);
  std::mt19937 rng(43);
  int done = 0;
  for (int i = 0; i < 60 && done < 30; ++i) {
    long p = (i % 3 == 0) ? 2 : ((i % 3 == 1) ? 3 : 5);
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep g = random_map(rng, p, d);
    BerkPoint S = random_point(rng, p);
    CHECK(ordres_direct(g, S) == ordres_via_formula(g, S));
    ++done;
  }
  CHECK(done >= 30);
}

TEST_CASE("conjugation equivariance of the crucial function") {
  std::mt19937 rng(47);
  for (int i = 0; i < 15; ++i) {
    RationalMapRep f = random_map(rng, 5, 2);
    // h: z -> a + b z
    TowerElem a(C5, QQ(static_cast<long>(rng() % 5)));
    TowerElem b = TowerElem::uniformizer(C5, QQ(static_cast<long>(rng() % 3) - 1));
    Mobius h = Mobius::affine(a, b);
    RationalMapRep g = f.conjugate(h);
    BerkPoint S = random_point(rng, 5);
    BerkPoint hS = mobius_image(h, S);
    BerkPoint hScan = mobius_image(h, BerkPoint::gauss(C5));
    QQ lhs = crucial_at(f, hS) - crucial_at(f, hScan);
    QQ rhs = crucial_at(g, S);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("crucial slope range and convexity") {
  std::mt19937 rng(53);
  int done = 0;
  for (int i = 0; i < 60 && done < 25; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, 5, d);
    BerkPoint S = random_point(rng, 5);
    ++done;
    std::vector<QQ> slopes;
    for (long r = -1; r < 5; ++r) {
      P1Fp v = r < 0 ? P1Fp::infinity() : P1Fp::finite(r, 5);
      QQ s = crucial_slope(f, S, v);
      slopes.push_back(s);
      // s = (d+1-2m)/(2(d-1)) for integer m in [0, d+1]
      QQ m = (QQ(d + 1) - s * QQ(2 * (d - 1))) / 2;
      CHECK(m.get_den() == 1);
      CHECK(m >= 0);
      CHECK(m <= d + 1);
    }
    for (size_t x = 0; x < slopes.size(); ++x)
      for (size_t y = x + 1; y < slopes.size(); ++y)
        CHECK(slopes[x] + slopes[y] >= 0);
  }
  CHECK(done >= 25);
}

TEST_CASE("slope outside the crucial tree") {
  std::mt19937 rng(59);
  int done = 0;
  for (int i = 0; i < 400 && done < 12; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, 5, d);
    FiniteTree G;
    try {
      G = crucial_tree(f);
    } catch (const UnsupportedResidueExtension&) {
      continue;
    }
    BerkPoint S = random_point(rng, 5);
    if (G.contains(S)) continue;
    BerkPoint r = retract_to_tree(S, G);
    if (rho(S, r).is_infinity() || rho(S, r) == ExtValue(QQ(0))) continue;
    ++done;
    // halfway toward the retraction, pointing at the retraction
    QQ srl = crucial_slope(f, S, r);
    bool fixed = (map_image(f, S) == S);
    QQ expect = fixed ? QQ(-1, 2) : qq(-(d + 1), 2 * (d - 1));
    CHECK(srl == expect);
  }
  CHECK(done >= 12);
}

TEST_CASE("minresloc agreement for quadratic families") {
  // z^2 + c with v(c) = -2: singleton at zeta(0;-1) by the even-degree rule
  RationalMapRep f = z2_plus(5, QQ(1, 25));
  MinResLocResult m = minresloc(f);
  REQUIRE(m.locus.size() == 1);
  CHECK(m.locus[0] == pt2(0, QQ(-1)));
  CHECK(m.min_value > 0);
  CHECK(!is_potentially_good(f));
  // z^2 + 1/p is not potentially good either
  RationalMapRep g = z2_plus(5, QQ(1, 5));
  MinResLocResult mg = minresloc(g);
  CHECK(mg.min_value > 0);
  REQUIRE(mg.locus.size() == 1);
  CHECK(mg.locus[0] == BerkPoint::type2(TowerElem::zero(TowerContext{5, 2}),
                                        QQ(-1, 2)));
}

TEST_CASE("minresloc on random maps: both routes agree internally") {
  std::mt19937 rng(61);
  int done = 0;
  for (int i = 0; i < 300 && done < 12; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, 5, d);
    try {
      MinResLocResult m = minresloc(f);  // throws if the routes disagree
      CHECK(!m.locus.empty());
      CHECK(m.locus.size() <= 2);
      if (d % 2 == 0) CHECK(m.locus.size() == 1);
      CHECK(m.min_value >= 0);
      for (const auto& S : m.locus) {
        CHECK(S.is_type2());
        CHECK(ordres_direct(f, S) == m.min_value);
      }
      ++done;
    } catch (const UnsupportedResidueExtension&) {
    }
  }
  CHECK(done >= 12);
}

TEST_CASE("diameter bounds") {
  CHECK(check_diam_bounds(z_pow2(5)).ok);
  CHECK(check_diam_bounds(pz2(5)).ok);
  CHECK(check_diam_bounds(z2_plus(5, QQ(1, 5))).ok);
  // z^2 conjugated by z/p: resultant shifts, bounds still hold
  RationalMapRep f = z_pow2(5).conjugate(
      Mobius::affine(TowerElem::zero(C5), TowerElem(C5, QQ(1, 5))));
  DiamBounds db = check_diam_bounds(f);
  CHECK(db.ok);
  std::mt19937 rng(67);
  int done = 0;
  for (int i = 0; i < 160 && done < 8; ++i) {
    RationalMapRep g = random_map(rng, 5, 3);
    try {
      DiamBounds b = check_diam_bounds(g);
      CHECK(b.ok);
      for (const QQ& s : b.minresloc_slack) CHECK(s >= 0);
      for (const QQ& s : b.crucialtree_slack) CHECK(s >= 0);
      ++done;
    } catch (const UnsupportedResidueExtension&) {
    }
  }
  CHECK(done >= 8);
}

TEST_CASE("weight structure on random cubic maps") {
  std::mt19937 rng(71);
  int done = 0;
  for (int i = 0; i < 160 && done < 8; ++i) {
    RationalMapRep f = random_map(rng, 5, 3);
    try {
      CrucialMeasure cm = crucial_measure(f);
      long sum = 0;
      CHECK(cm.weights.size() <= 2);  // at most d-1 atoms
      for (const auto& [pt, w] : cm.weights) {
        CHECK(pt.is_type2());
        CHECK(w >= 1);
        CHECK(w <= 2);
        sum += w;
      }
      CHECK(sum == 2);  // d - 1
      CHECK(cm.nu.total() == 1);
      ++done;
    } catch (const UnsupportedResidueExtension&) {
    }
  }
  CHECK(done >= 8);
}

TEST_CASE("case table on hanging branches") {
  std::mt19937 rng(73);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 12; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, 5, d);
    FiniteTree G;
    try {
      G = crucial_tree(f);
    } catch (const UnsupportedResidueExtension&) {
      continue;
    }
    // hang a random branch off the tree
    BerkPoint X = random_point(rng, 5);
    if (G.contains(X)) continue;
    BerkPoint Sg = retract_to_tree(X, G);
    if (!Sg.is_type2()) continue;
    BerkPoint mid = join(X, Sg, BerkPoint::infinity(C5));
    // branch strictly off the tree: [X, attach) where attach is the point
    // where [X, Sg] meets the tree
    FiniteTree branch = FiniteTree::span({X, Sg});
    TreeMeasure nu;
    try {
      nu = nu_f_gamma(f, branch, BerkPoint::gauss(C5));
    } catch (const UnsupportedResidueExtension&) {
      continue;
    }
    ++checked;
    TreeMeasure nug = valency_measure(branch);
    BerkPoint rS = retract_to_tree(Sg, branch);
    TreeMeasure diff = nu;
    diff.add(rS, QQ(-1));  // nu_{f,branch} - (r)_* delta_{S_Gamma}
    for (const auto& [pt, m] : diff.atoms()) {
      if (!pt.is_type2()) continue;
      if (pt == rS) continue;  // the attachment carries the retraction atom
      QQ got = m * QQ(d - 1);
      BerkPoint img = map_image(f, pt);
      QQ expect;
      if (img == pt) {
        DegreeData dd(f, pt);
        if (dd.reduced().is_identity()) {
          expect = QQ(0);  // (A1)
        } else {
          // (A2): (-2 nu_Gamma + (r)_* delta)({pt}) + 1
          expect = QQ(-2) * nug.at(pt) + (pt == rS ? QQ(1) : QQ(0)) + 1;
        }
      } else {
        BerkPoint rimg = retract_to_tree(img, branch);
        if (rimg == pt)
          expect = QQ(-2) * nug.at(pt) + 2 * (pt == rS ? QQ(1) : QQ(0));  // (B2)
        else
          expect = QQ(-2) * nug.at(pt) + (pt == rS ? QQ(1) : QQ(0));  // (B1)
      }
      CHECK(got == expect);
    }
  }
  CHECK(checked >= 12);
}
