#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "lf/local_field.hpp"
#include "lf/number_field.hpp"
#include "lf/rational.hpp"

using namespace lf;

TEST_CASE("p-adic valuation is additive and detects integrality") {
  LocalRational a(3, mpq_class(9, 2));
  LocalRational b(3, mpq_class(1, 3));
  CHECK(a.valuation() == 2);
  CHECK(b.valuation() == -1);
  CHECK((a * b).valuation() == 1);
  CHECK(a.is_p_integral());
  CHECK(!b.is_p_integral());
  CHECK(LocalRational::zero(3).valuation() == val_infinity);
}

TEST_CASE("mod-p reduction and inversion") {
  LocalRational u(5, mpq_class(7, 3));
  CHECK(u.invert() * u == LocalRational::one(5));
  CHECK(u.mod_p() == 4);  // 7/3 = 7*2 = 14 = 4 mod 5
  LocalRational nz(5, 10, 1);
  CHECK(nz.mod_p() == 0);
}

TEST_CASE("quadratic number field arithmetic") {
  auto ctx = make_number_field_ctx(2, {1, 1, 1});  // x^2 + x + 1
  auto x = NumberFieldRational::gen(ctx);
  auto one = x.make_one();
  CHECK(x * x == -x - one);          // defining relation
  CHECK(x * x * x == one);           // x has order 3
  auto y = x + one;
  CHECK(y * y == x);                 // (x+1)^2 = x^2 + 2x + 1 = x
  CHECK((x.invert() * x) == one);
  CHECK_THROWS_AS(NumberFieldRational::zero(ctx).invert(), Error);
}

TEST_CASE("reducible modulus is rejected") {
  CHECK_THROWS_AS(make_number_field_ctx(2, {1, 0, 1}), Error);  // x^2+1 = (x+1)^2 mod 2
  CHECK_THROWS_AS(make_number_field_ctx(5, {1, 0, 1}), Error);  // x^2+1 = (x+2)(x+3) mod 5
  CHECK_NOTHROW(make_number_field_ctx(3, {1, 0, 1}));
}

TEST_CASE("unramified field construction and sizes") {
  FieldPtr q2 = make_qp(2, 12);
  CHECK(q2->f == 1);
  CHECK(q2->e == 1);
  CHECK(q2->n == 1);
  CHECK(q2->q() == 2);
  FieldPtr q4 = make_local_field(2, {1, 1, 1}, 12);
  CHECK(q4->f == 2);
  CHECK(q4->q() == 4);
  CHECK(!q4->ramified());
}

TEST_CASE("eisenstein step must be eisenstein") {
  std::vector<std::vector<mpz_class>> good = {{mpz_class(-2)}, {mpz_class(0)}, {mpz_class(1)}};
  FieldPtr k = make_local_field(2, {0, 1}, 10, good);
  CHECK(k->e == 2);
  CHECK(k->n == 2);
  CHECK(k->ramified());
  // constant term not divisible by p
  std::vector<std::vector<mpz_class>> bad1 = {{mpz_class(-1)}, {mpz_class(0)}, {mpz_class(1)}};
  CHECK_THROWS_AS(make_local_field(2, {0, 1}, 10, bad1), Error);
  // constant term divisible by p^2
  std::vector<std::vector<mpz_class>> bad2 = {{mpz_class(-4)}, {mpz_class(0)}, {mpz_class(1)}};
  CHECK_THROWS_AS(make_local_field(2, {0, 1}, 10, bad2), Error);
}

TEST_CASE("residue ring axioms on samples") {
  FieldPtr F = make_local_field(3, {1, 0, 1}, 8);
  auto elt = [&](long a, long b) {
    return ResidueElement(F, {mpz_class(a), mpz_class(b)}, F->N);
  };
  std::vector<ResidueElement> samples = {elt(0, 0), elt(1, 0), elt(0, 1), elt(2, 5),
                                         elt(7, 3), elt(3, 0), elt(1, 1)};
  for (const auto& a : samples)
    for (const auto& b : samples) {
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - b == -(b - a));
      for (const auto& c : samples) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
}

TEST_CASE("precision propagates through arithmetic as a minimum") {
  FieldPtr F = make_qp(2, 10);
  ResidueElement a = ResidueElement::from_int(F, 5).with_precision(6);
  ResidueElement b = ResidueElement::from_int(F, 3);
  CHECK(a.precision() == 6);
  CHECK(b.precision() == 10);
  CHECK((a + b).precision() == 6);
  CHECK((a * b).precision() == 6);
  // equality only consults digits below the joint precision
  ResidueElement c = ResidueElement::from_int(F, 5 + 64).with_precision(6);
  CHECK(a == c);
}

TEST_CASE("unit test and division by p") {
  FieldPtr F = make_qp(5, 8);
  ResidueElement u = ResidueElement::from_int(F, 7);
  CHECK(u.is_unit());
  CHECK(u.invert() * u == u.make_one());
  ResidueElement m = ResidueElement::from_int(F, 25);
  CHECK(!m.is_unit());
  CHECK_THROWS_AS(m.invert(), Error);
  ResidueElement d = m.div_p();
  CHECK(d == ResidueElement::from_int(F, 5).with_precision(d.precision()));
  CHECK(d.precision() == 7);  // one digit spent
  CHECK_THROWS_AS(u.div_p(), Error);
}

TEST_CASE("uniformizer powers and div_pi in a ramified field") {
  std::vector<std::vector<mpz_class>> ep = {{mpz_class(-3)}, {mpz_class(0)}, {mpz_class(1)}};
  FieldPtr K = make_local_field(3, {0, 1}, 8, ep);
  ResidueElement pi = ResidueElement::uniformizer(K);
  CHECK(!pi.is_unit());
  // pi^2 = 3 by the defining polynomial y^2 - 3
  ResidueElement three = ResidueElement::from_int(K, 3);
  CHECK(pi * pi == three);
  ResidueElement back = (pi * pi).div_pi();
  CHECK(back == pi.with_precision(back.precision()));
}

TEST_CASE("frobenius fixes the prime field and has order f") {
  FieldPtr F = make_local_field(2, {1, 1, 1}, 10);
  FrobeniusMap s = frobenius_lift(F);
  ResidueElement x(F, {mpz_class(0), mpz_class(1)}, F->N);
  ResidueElement sx = s.apply(x);
  CHECK(sx != x);
  CHECK(s.apply(sx) == x);  // order 2
  ResidueElement c = ResidueElement::from_int(F, 17);
  CHECK(s.apply(c) == c);
  // multiplicativity on samples
  ResidueElement y(F, {mpz_class(3), mpz_class(5)}, F->N);
  CHECK(s.apply(x * y) == s.apply(x) * s.apply(y));
  CHECK(s.apply(x + y) == s.apply(x) + s.apply(y));
}

TEST_CASE("frobenius reduces to the q-power map on the residue field") {
  FieldPtr F = make_local_field(3, {1, 0, 1}, 8);
  FrobeniusMap s = frobenius_lift(F);
  for (long a = 0; a < 3; ++a)
    for (long b = 0; b < 3; ++b) {
      ResidueElement x(F, {mpz_class(a), mpz_class(b)}, F->N);
      ResidueElement lhs = s.apply(x) - x.pow(3);
      CHECK(lhs.residue_is_zero());
    }
}

TEST_CASE("trace pairing is symmetric with unit determinant") {
  FieldPtr F = make_local_field(2, {1, 1, 1}, 8);
  auto T = trace_pairing_matrix(F, 3);
  REQUIRE(T.size() == 2);
  CHECK(T[0][1] == T[1][0]);
  mpz_class det = T[0][0] * T[1][1] - T[0][1] * T[1][0];
  CHECK(det % 2 != 0);
}

TEST_CASE("unit sample is the full unit group and is closed") {
  FieldPtr F = make_qp(2, 8);
  UnitGroupSample U = unit_group(F, 3);
  CHECK(U.units.size() == 4);  // (Z/8)^* = {1,3,5,7}
  FieldPtr G = make_local_field(2, {1, 1, 1}, 8);
  UnitGroupSample V = unit_group(G, 1);
  CHECK(V.units.size() == 3);  // F_4^*
  UnitGroupSample W = unit_group(G, 2);
  CHECK(W.units.size() == 12);  // q^r - q^(r-1) = 16 - 4
  // closure under multiplication: every product lands back in the sample
  long pr = V.pr.get_si();
  for (size_t i = 0; i < V.units.size(); ++i) {
    auto M = V.mult_matrix(static_cast<int>(i));
    for (size_t j = 0; j < V.units.size(); ++j) {
      std::vector<long> prod(V.units[j].size(), 0);
      for (size_t row = 0; row < prod.size(); ++row) {
        for (size_t col = 0; col < prod.size(); ++col)
          prod[row] = (prod[row] + M[row][col] * V.units[j][col]) % pr;
      }
      CHECK(V.find(prod) >= 0);
    }
  }
}
