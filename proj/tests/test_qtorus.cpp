#include "doctest.h"
#include "fixtures.hpp"
#include "qcluster/errors.hpp"
#include "qcluster/qtorus.hpp"

using namespace qcluster;
using fixtures::mono;

namespace {

const IntMatrix kA2Lambda{{0, -1}, {1, 0}};

QTElem P1() { return mono({0, -1}) + mono({-1, -1}) + mono({-1, 0}); }
QTElem P2() { return mono({1, -1}) + mono({0, -1}); }

}  // namespace

TEST_CASE("VCoeff arithmetic and text form") {
  VCoeff a = VCoeff::vpow(-1) + VCoeff::monomial(3, 2);
  CHECK(a.to_string() == "v^-1 + 2*v^3");
  CHECK(parse_vcoeff(a.to_string()) == a);
  CHECK((a - a).is_zero());
  CHECK(VCoeff(0).to_string() == "0");
  CHECK((-VCoeff::vpow(1)).to_string() == "-v");
  CHECK(parse_vcoeff("-v + 3 - 2*v^-2") == VCoeff::monomial(1, -1) + VCoeff(3) + VCoeff::monomial(-2, -2));
  CHECK(a.bar() == VCoeff::vpow(1) + VCoeff::monomial(-3, 2));

  auto q = (a * (VCoeff(1) + VCoeff::vpow(2))).exact_div(VCoeff(1) + VCoeff::vpow(2));
  REQUIRE(q);
  CHECK(*q == a);
  CHECK_FALSE(VCoeff(3).exact_div(VCoeff(2)).has_value());
  CHECK_FALSE((VCoeff(1) + VCoeff::vpow(1)).exact_div(VCoeff(1) - VCoeff::vpow(1)).has_value());
}

TEST_CASE("in_m and in_window") {
  CHECK(in_m(VCoeff::vpow(-1) + VCoeff::vpow(-3)));
  CHECK_FALSE(in_m(VCoeff(1)));
  CHECK(in_m(VCoeff{}));
  CHECK(in_window(VCoeff::vpow(2) + VCoeff::vpow(3), 2, 3));
  CHECK_FALSE(in_window(VCoeff::vpow(1), 2, 3));
  // [X1*I2] = P2 + v^-1 * 1 has no middle term: the empty window check is vacuous.
  CHECK(in_window(VCoeff{}, 1, 0));
}

TEST_CASE("add") {
  const QTElem x1 = mono({1, 0});
  CHECK(add(x1, QTElem::zero(2)) == x1);
  CHECK(add(x1, -x1).is_zero());
  CHECK(add(mono({1, -1}), mono({0, -1})) == P2());
  CHECK(P2().to_string() == "X[0,-1] + X[1,-1]");
  CHECK_THROWS_AS(add(x1, QTElem::one(3)), DimensionMismatch);
}

TEST_CASE("commutative_mul") {
  const QTElem one = QTElem::one(2);
  const QTElem y1 = mono({0, 1});
  const QTElem y2 = mono({-1, 0});
  CHECK(commutative_mul(mono({0, -1}), one + y2 + commutative_mul(y1, y2)) == P1());
  CHECK(commutative_mul(P1(), one) == P1());
  const QTElem prod = commutative_mul(one + y1, one + y2);
  CHECK(prod.size() == 4);
  CHECK(prod == one + y1 + y2 + commutative_mul(y1, y2));
}

TEST_CASE("twisted_mul on the A2 torus") {
  CHECK(twisted_mul(mono({1, 0}), mono({0, 1}), kA2Lambda) == mono({1, 1}, VCoeff::vpow(-1)));
  CHECK(twisted_mul(mono({2, -1}), QTElem::one(2), kA2Lambda) == mono({2, -1}));
  // v^{Lambda_12} X1 * I2 = P2 + v^-1
  const QTElem lhs = twisted_mul(mono({1, 0}, VCoeff::vpow(-1)), P1(), kA2Lambda);
  CHECK(lhs == P2() + QTElem::one(2).scaled(VCoeff::vpow(-1)));
}

TEST_CASE("bar involution") {
  CHECK(bar(mono({1, 0}, VCoeff::vpow(1))) == mono({1, 0}, VCoeff::vpow(-1)));
  CHECK(bar(P2()) == P2());
  fixtures::Gen gen(7);
  for (int i = 0; i < 100; ++i) {
    const QTElem a = gen.elem(3);
    const QTElem b = gen.elem(3);
    const IntMatrix lam{{0, 2, -1}, {-2, 0, 3}, {1, -3, 0}};
    CHECK(bar(bar(a)) == a);
    CHECK(bar(twisted_mul(a, b, lam)) == twisted_mul(bar(b), bar(a), lam));
  }
}

TEST_CASE("twisted product properties") {
  fixtures::Gen gen(11);
  const IntMatrix lam{{0, 1, -2}, {-1, 0, 1}, {2, -1, 0}};
  for (int i = 0; i < 100; ++i) {
    const ExpVec m = gen.exp(3, 3);
    const ExpVec mp = gen.exp(3, 3);
    const QTElem xm = QTElem::monomial(m);
    const QTElem xmp = QTElem::monomial(mp);
    const std::int64_t l = bilinear(lam, m, mp);
    CHECK(twisted_mul(xm, xmp, lam) ==
          twisted_mul(xmp, xm, lam).scaled(VCoeff::vpow(2 * l)));
    CHECK(twisted_mul(xm, xmp, lam) == commutative_mul(xm, xmp).scaled(VCoeff::vpow(l)));

    const QTElem a = gen.elem(3), b = gen.elem(3), c = gen.elem(3);
    CHECK(twisted_mul(twisted_mul(a, b, lam), c, lam) == twisted_mul(a, twisted_mul(b, c, lam), lam));
  }
}

TEST_CASE("exact_divide") {
  // (X^{f1} + 1) / X^{f2}: q = v X^{f1-f2} + X^{-f2}, since lambda(f1-f2, f2) = -1.
  const QTElem num = mono({1, 0}) + QTElem::one(2);
  const QTElem q = exact_divide(num, mono({0, 1}), kA2Lambda);
  CHECK(q == mono({1, -1}, VCoeff::vpow(1)) + mono({0, -1}));
  CHECK(twisted_mul(q, mono({0, 1}), kA2Lambda) == num);

  CHECK(exact_divide(P1(), QTElem::one(2), kA2Lambda) == P1());
  CHECK_THROWS_AS(exact_divide(num, mono({1, 0}) - QTElem::one(2), kA2Lambda), NotDivisible);
  CHECK_THROWS_AS(exact_divide(num, QTElem::zero(2), kA2Lambda), PreconditionError);
}

TEST_CASE("exact_divide round-trips against twisted_mul") {
  fixtures::Gen gen(2024);
  const IntMatrix lam{{0, 1, -2}, {-1, 0, 1}, {2, -1, 0}};
  for (int i = 0; i < 200; ++i) {
    const QTElem q = gen.elem(3);
    const QTElem d = gen.elem(3, 3);
    CHECK(exact_divide(twisted_mul(q, d, lam), d, lam) == q);
  }
}

TEST_CASE("text form round-trips") {
  fixtures::Gen gen(5);
  for (int i = 0; i < 50; ++i) {
    const QTElem a = gen.elem(3);
    CHECK(parse_qtelem(a.to_string(), 3) == a);
  }
}
