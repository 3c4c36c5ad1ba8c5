#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "../tests/helpers.hpp"
#include "berkcrucial/profile.hpp"

using namespace berk;
using namespace berk::testing;

namespace {
const TowerContext C5{5, 1};
BerkPoint pt2(long a, QQ t) { return BerkPoint::type2(TowerElem(C5, QQ(a)), t); }
BerkPoint pt1(QQ a) { return BerkPoint::type1(TowerElem(C5, a)); }
}  // namespace

TEST_CASE("point normal form and equality") {
  CHECK(pt2(0, QQ(1)) == BerkPoint::type2(TowerElem(C5, QQ(5)), QQ(1)));
  CHECK(pt2(0, QQ(1)) != pt2(1, QQ(1)));
  CHECK(pt2(0, QQ(1)).normal_form().key() ==
        BerkPoint::type2(TowerElem(C5, QQ(25)), QQ(1)).normal_form().key());
  CHECK(pt2(7, QQ(1, 2)) == pt2(2, QQ(1, 2)));
}

TEST_CASE("join and rho") {
  BerkPoint inf = BerkPoint::infinity(C5);
  CHECK(join(pt1(QQ(0)), pt1(QQ(1)), inf) == BerkPoint::gauss(C5));
  CHECK(join(pt1(QQ(0)), pt1(QQ(5)), inf) == pt2(0, QQ(1)));
  CHECK(join(pt2(0, QQ(2)), pt2(0, QQ(2)), inf) == pt2(0, QQ(2)));
  // median along a path
  CHECK(join(pt2(0, QQ(3)), pt2(0, QQ(1)), BerkPoint::gauss(C5)) ==
        pt2(0, QQ(1)));
  CHECK(rho(BerkPoint::gauss(C5), pt2(0, QQ(1))) == ExtValue(QQ(1)));
  CHECK(rho(pt2(0, QQ(1)), pt2(5, QQ(2))) == ExtValue(QQ(1)));
  CHECK(rho(pt2(0, QQ(0)), pt1(QQ(2))).is_infinity());
  // triangle equality through the join
  std::mt19937 rng(3);
  for (int i = 0; i < 50; ++i) {
    BerkPoint A = random_point(rng, 5), B = random_point(rng, 5),
              Cc = random_point(rng, 5);
    BerkPoint J = join(A, B, Cc);
    if (A == B) continue;
    CHECK(rho(A, B) == rho(A, J) + rho(J, B));
  }
}

TEST_CASE("hsia kernel") {
  CHECK(hsia_can(pt1(QQ(0)), pt1(QQ(1))) == ExtValue(QQ(0)));
  CHECK(hsia_can(BerkPoint::gauss(C5), BerkPoint::gauss(C5)) == ExtValue(QQ(0)));
  // two points below the Gauss point: the kernel sees their meet
  CHECK(hsia_can(pt2(0, QQ(1)), pt2(0, QQ(2))) == ExtValue(QQ(1)));
  // symmetry and the Gromov identity vs join
  std::mt19937 rng(9);
  BerkPoint scan = BerkPoint::gauss(C5);
  for (int i = 0; i < 80; ++i) {
    BerkPoint A = random_point(rng, 5), B = random_point(rng, 5);
    CHECK(hsia_can(A, B) == hsia_can(B, A));
    CHECK(hsia_can(A, B) == rho(scan, join(A, B, scan)));
    CHECK(hsia_can(A, A) == rho(scan, A));
  }
}

TEST_CASE("gauss_val via Newton polygons") {
  Poly z = Poly::from_rationals(C5, {QQ(0), QQ(1)});
  CHECK(gauss_val(z, BerkPoint::gauss(C5)) == ExtValue(QQ(0)));
  Poly z2 = Poly::from_rationals(C5, {QQ(0), QQ(0), QQ(1)});
  CHECK(gauss_val(z2, pt2(0, QQ(1))) == ExtValue(QQ(2)));
  // multiplicativity on (z-1)(z-5) at zeta(0;1)
  Poly prod = Poly::from_rationals(C5, {QQ(5), QQ(-6), QQ(1)});
  Poly a = Poly::from_rationals(C5, {QQ(-1), QQ(1)});
  Poly b = Poly::from_rationals(C5, {QQ(-5), QQ(1)});
  BerkPoint S = pt2(0, QQ(1));
  CHECK(gauss_val(prod, S) ==
        ExtValue(gauss_val(a, S).value() + gauss_val(b, S).value()));
  CHECK(gauss_val(prod, S) == ExtValue(QQ(1)));
}

TEST_CASE("seminorm multiplicativity") {
  std::mt19937 rng(15);
  for (int i = 0; i < 40; ++i) {
    std::vector<QQ> ac(3), bc(3);
    for (auto& q : ac) q = QQ(static_cast<long>(rng() % 11) - 5);
    for (auto& q : bc) q = QQ(static_cast<long>(rng() % 11) - 5);
    Poly a = Poly::from_rationals(C5, ac), b = Poly::from_rationals(C5, bc);
    if (a.is_zero() || b.is_zero()) continue;
    BerkPoint S = random_point(rng, 5);
    Poly one = Poly::from_rationals(C5, {QQ(1)});
    ExtValue lhs = seminorm_val(a * b, one, S);
    ExtValue rhs = ExtValue(seminorm_val(a, one, S).value() +
                            seminorm_val(b, one, S).value());
    CHECK(lhs == rhs);
  }
  // 1/z at the Gauss point and z^2/p at zeta(0;1)
  Poly one = Poly::from_rationals(C5, {QQ(1)});
  Poly z = Poly::from_rationals(C5, {QQ(0), QQ(1)});
  CHECK(seminorm_val(one, z, BerkPoint::gauss(C5)) == ExtValue(QQ(0)));
  Poly z2 = Poly::from_rationals(C5, {QQ(0), QQ(0), QQ(1)});
  Poly pc = Poly::from_rationals(C5, {QQ(5)});
  CHECK(seminorm_val(z2, pc, pt2(0, QQ(1))) == ExtValue(QQ(1)));
}

TEST_CASE("map_image on fixtures") {
  CHECK(map_image(z_pow2(5), BerkPoint::gauss(C5)) == BerkPoint::gauss(C5));
  CHECK(map_image(pz2(5), BerkPoint::gauss(C5)) == pt2(0, QQ(1)));
  RationalMapRep inv = make_map(5, {1}, {0, 1});  // 1/z
  CHECK(map_image(inv, pt2(5, QQ(2))) ==
        BerkPoint::type2(TowerElem(C5, QQ(1, 5)), QQ(0)));
  // type I evaluation incl. infinity
  CHECK(map_image(inv, pt1(QQ(0))) == BerkPoint::infinity(C5));
  CHECK(map_image(inv, BerkPoint::infinity(C5)) == pt1(QQ(0)));
}

TEST_CASE("map_image certified by the seminorm identity") {
  std::mt19937 rng(17);
  Poly one = Poly::from_rationals(C5, {QQ(1)});
  for (int i = 0; i < 25; ++i) {
    RationalMapRep f = random_map(rng, 5, 2 + static_cast<int>(rng() % 2));
    BerkPoint S = random_point(rng, 5);
    BerkPoint img = map_image(f, S);
    REQUIRE(img.is_type2());
    // for test functions g = z - c: |g|_{f(S)} = |g o f|_S
    for (long c = -2; c <= 2; ++c) {
      Poly gz = Poly::from_rationals(C5, {QQ(-c), QQ(1)});
      ExtValue lhs = gauss_val(gz, img);
      Poly gof_num = f.num() - f.den() * TowerElem(C5, QQ(c));
      ExtValue rhs = seminorm_val(gof_num, f.den(), S);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("mobius action on points") {
  TowerContext ctx = C5;
  Mobius h = Mobius::affine(TowerElem(ctx, QQ(3)), TowerElem(ctx, QQ(5)));
  CHECK(mobius_image(h, BerkPoint::gauss(ctx)) == pt2(3, QQ(1)));
  CHECK(mobius_image(h, pt1(QQ(1))) == pt1(QQ(8)));
  Mobius inv = Mobius::inversion(ctx);
  CHECK(mobius_image(inv, pt2(0, QQ(2))) == pt2(0, QQ(-2)));
  CHECK(mobius_image(inv, pt2(5, QQ(2))) ==
        BerkPoint::type2(TowerElem(ctx, QQ(1, 5)), QQ(0)));
  // isometry on H^1 for random pairs
  std::mt19937 rng(19);
  for (int i = 0; i < 40; ++i) {
    BerkPoint A = random_point(rng, 5), B = random_point(rng, 5);
    CHECK(rho(A, B) == rho(mobius_image(h, A), mobius_image(h, B)));
    CHECK(rho(A, B) == rho(mobius_image(inv, A), mobius_image(inv, B)));
  }
}

TEST_CASE("directions at type II points") {
  BerkPoint scan = BerkPoint::gauss(C5);
  CHECK(direction_toward(scan, pt1(QQ(2))) == P1Fp::finite(2, 5));
  CHECK(direction_toward(scan, pt1(QQ(7))) == P1Fp::finite(2, 5));
  CHECK(direction_toward(scan, BerkPoint::infinity(C5)) == P1Fp::infinity());
  CHECK(direction_toward(scan, pt2(0, QQ(-3))) == P1Fp::infinity());
  CHECK(direction_toward(scan, pt1(QQ(1, 5))) == P1Fp::infinity());
  CHECK(direction_toward(scan, pt2(3, QQ(2))) == P1Fp::finite(3, 5));
  // representatives map back into the right branch
  for (long r = -1; r < 5; ++r) {
    P1Fp v = r < 0 ? P1Fp::infinity() : P1Fp::finite(r, 5);
    BerkPoint rep = direction_rep(scan, v);
    CHECK(direction_toward(scan, rep) == v);
  }
  // at a deeper base point
  BerkPoint base = pt2(2, QQ(3, 2));
  for (long r = -1; r < 5; ++r) {
    P1Fp v = r < 0 ? P1Fp::infinity() : P1Fp::finite(r, 5);
    BerkPoint rep = direction_rep(base, v);
    CHECK(direction_toward(base, rep) == v);
  }
}

TEST_CASE("wedge profile near a fixed type I point matches the chordal limit") {
  // f = z^2 at a = 0 (superattracting): limit value max(0, -v(f^#)) = 0
  RationalMapRep f = z_pow2(5);
  SegmentPLF pr = edge_profile(ProfileKind::Wedge, f, BerkPoint::gauss(C5),
                               pt1(QQ(0)), pt2(0, QQ(3)));
  CHECK(pr.slope_from_a() == QQ(0));
  // f = pz at 0: v(f') = 1, wedge tends to max(0, -1) = 0 but with the
  // fixed-direction plateau; the tail slope must vanish
  RationalMapRep g = make_map(5, {0, 5}, {1});
  SegmentPLF pr2 = edge_profile(ProfileKind::Wedge, g, BerkPoint::gauss(C5),
                                pt1(QQ(0)), pt2(0, QQ(3)));
  CHECK(pr2.slope_from_a() == QQ(0));
  // f = z/p at 0 (repelling): f^#(0) = p, limit value = 1
  RationalMapRep h = make_map(5, {0, QQ(1, 5)}, {1});
  SegmentPLF pr3 = edge_profile(ProfileKind::Wedge, h, BerkPoint::gauss(C5),
                                pt1(QQ(0)), pt2(0, QQ(6)));
  CHECK(pr3.slope_from_a() == QQ(0));
  QQ tail_value = pr3.value_at(pt2(0, QQ(7)));
  CHECK(tail_value == QQ(1));
  QQ neg_chordal = -h.chordal_derivative_val(TowerElem::zero(C5)).value();
  CHECK(QQ(1) == std::max(QQ(0), neg_chordal));
}

TEST_CASE("profile slope ranges on segments from the base point") {
  std::mt19937 rng(21);
  int done = 0;
  for (int i = 0; i < 60 && done < 25; ++i) {
    int d = 2 + static_cast<int>(rng() % 2);
    RationalMapRep f = random_map(rng, 5, d);
    BerkPoint S0 = random_point(rng, 5);
    BerkPoint B = random_point(rng, 5);
    if (S0 == B) continue;
    ++done;
    SegmentPLF w = edge_profile(ProfileKind::Wedge, f, S0, S0, B);
    SegmentPLF g = edge_profile(ProfileKind::Potential, f, S0, S0, B);
    QQ ws = w.slope_from_a();
    CHECK((ws == 0 || ws == 1));
    QQ gs = g.slope_from_a();
    CHECK(gs >= 0);
    CHECK(gs <= d);
    CHECK(gs.get_den() == 1);
  }
  CHECK(done >= 25);
}

TEST_CASE("potential profile of a good reduction map vanishes") {
  RationalMapRep f = z_pow2(5);
  SegmentPLF g = edge_profile(ProfileKind::Potential, f, BerkPoint::gauss(C5),
                              pt2(0, QQ(2)), BerkPoint::gauss(C5));
  CHECK(g.value_at(pt2(0, QQ(2))) == QQ(0));
  CHECK(g.value_at(BerkPoint::gauss(C5)) == QQ(0));
  CHECK(g.slope_from_a() == QQ(0));
}
