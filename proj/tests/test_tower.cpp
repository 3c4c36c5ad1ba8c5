#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "berkcrucial/tower.hpp"

using namespace berk;

TEST_CASE("valuations of basic elements") {
  TowerContext c2{2, 1}, c22{2, 2};
  CHECK(TowerElem(c2, QQ(2)).val() == ExtValue(QQ(1)));
  CHECK(TowerElem::pi(c22).val() == ExtValue(QQ(1, 2)));
  CHECK(TowerElem(c2, QQ(1, 2)).val() == ExtValue(QQ(-1)));
  CHECK(TowerElem::zero(c2).val().is_infinity());
}

TEST_CASE("pi arithmetic in the ramified tower") {
  TowerContext c{3, 2};
  TowerElem pi = TowerElem::pi(c);
  CHECK(pi * pi == TowerElem(c, QQ(3)));
  CHECK(pi.inverse() * pi == TowerElem::one(c));
  CHECK(pi.inverse() == pi / TowerElem(c, QQ(3)));
  TowerElem x = TowerElem::one(c) + pi;
  TowerElem y = TowerElem::one(c) - pi;
  CHECK(x + y == TowerElem(c, QQ(2)));
  CHECK_THROWS_AS(TowerElem::zero(c).inverse(), DivisionByZero);
}

TEST_CASE("residue map") {
  TowerContext c2{2, 1}, c22{2, 2};
  CHECK(TowerElem(c2, QQ(3)).residue() == 1);      // 1 + 2
  CHECK(TowerElem::pi(c22).residue() == 0);        // val 1/2 > 0
  CHECK(TowerElem(c2, QQ(3, 5)).residue() == 1);   // 3 * 5^-1 mod 2
  CHECK_THROWS_AS(TowerElem(c2, QQ(1, 2)).residue(), NotIntegral);
}

TEST_CASE("embed preserves valuation") {
  std::mt19937 rng(7);
  TowerContext c{5, 2}, cf{5, 6};
  for (int i = 0; i < 50; ++i) {
    std::vector<QQ> cs(2);
    for (auto& q : cs) {
      q = QQ(static_cast<long>(rng() % 19) - 9);
      if (rng() % 2) q /= 5;
    }
    TowerElem x(c, cs);
    TowerElem y = x.embed(cf);
    CHECK(x.val() == y.val());
  }
  TowerElem pi = TowerElem::pi(c);
  CHECK(pi.embed(cf) == TowerElem::pi(cf).pow(3));
}

TEST_CASE("uniformizer realizes requested valuations") {
  TowerContext c{2, 2};
  CHECK(TowerElem::uniformizer(c, QQ(1)) == TowerElem(c, QQ(2)));
  CHECK(TowerElem::uniformizer(c, QQ(1, 2)) == TowerElem::pi(c));
  TowerElem u = TowerElem::uniformizer(c, QQ(-3, 2));
  CHECK(u.val() == ExtValue(QQ(-3, 2)));
  CHECK(u == TowerElem::pi(c) / TowerElem(c, QQ(4)));
  CHECK_THROWS(TowerElem::uniformizer(c, QQ(1, 3)));
}

TEST_CASE("ultrametric and multiplicativity properties") {
  std::mt19937 rng(11);
  TowerContext c{3, 2};
  auto rand_elem = [&]() {
    std::vector<QQ> cs(2);
    for (auto& q : cs) {
      q = QQ(static_cast<long>(rng() % 13) - 6);
      if (rng() % 3 == 0) q /= 3;
      if (rng() % 3 == 1) q *= 3;
    }
    return TowerElem(c, cs);
  };
  for (int i = 0; i < 200; ++i) {
    TowerElem x = rand_elem(), y = rand_elem();
    ExtValue vx = x.val(), vy = y.val();
    CHECK((x + y).val() >= min(vx, vy));
    if (!(vx == vy)) CHECK((x + y).val() == min(vx, vy));
    if (!x.is_zero() && !y.is_zero())
      CHECK((x * y).val() == ExtValue(vx.value() + vy.value()));
    if (!x.is_zero()) CHECK(x.inverse().inverse() == x);
  }
}

TEST_CASE("residue is a ring morphism on integral elements") {
  std::mt19937 rng(13);
  TowerContext c{5, 2};
  auto rand_int_elem = [&]() {
    std::vector<QQ> cs(2);
    for (auto& q : cs) q = QQ(static_cast<long>(rng() % 25));
    return TowerElem(c, cs);
  };
  for (int i = 0; i < 100; ++i) {
    TowerElem x = rand_int_elem(), y = rand_int_elem();
    CHECK((x * y).residue() == (x.residue() * y.residue()) % 5);
    CHECK((x + y).residue() == (x.residue() + y.residue()) % 5);
  }
}

TEST_CASE("canonical truncation keeps the digits below the cut") {
  TowerContext c{2, 1};
  TowerElem x(c, QQ(11));  // 1 + 2 + 8
  CHECK(x.truncate_below(QQ(2)) == TowerElem(c, QQ(3)));
  CHECK(x.truncate_below(QQ(0)).is_zero());
  TowerElem y(c, QQ(3, 4));
  CHECK((y - y.truncate_below(QQ(1))).val() >= ExtValue(QQ(1)));
  CHECK(y.truncate_below(QQ(-1)) == TowerElem(c, QQ(1, 4)));  // 1/4 + 1/2 keeps 1/4... 3/4 = 1/4+1/2: digits below -1: v=-2 digit only
}
