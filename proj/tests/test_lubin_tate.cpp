#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lf/lubin_tate.hpp"

using namespace lf;

TEST_CASE("cyclotomic uniformizer series yields the multiplicative law") {
  for (long p : {2L, 3L}) {
    FieldPtr F = make_qp(p, 12);
    LubinTateResult res = lubin_tate_law(F, lt_cyclotomic_f(p), 10);
    CHECK(res.defining_check.pass);
    CHECK(res.pi_check.pass);
    const auto& law = res.F.law;
    auto one = ResidueElement::from_int(F, 1);
    CHECK(law.coeff(1, 0) == one.with_precision(law.coeff(1, 0).precision()));
    CHECK(law.coeff(0, 1) == one.with_precision(law.coeff(0, 1).precision()));
    CHECK(law.coeff(1, 1) == one.with_precision(law.coeff(1, 1).precision()));
    for (int d = 3; d <= 10; ++d)
      for (int j = 0; j <= d; ++j) CHECK(law.coeff(d - j, j).is_zero());
  }
}

TEST_CASE("standard series over Q_2 passes its defining identities") {
  FieldPtr F = make_qp(2, 16);
  LubinTateResult res = lubin_tate_law(F, lt_standard_f(F), 16);
  CHECK(res.defining_check.pass);
  CHECK(res.pi_check.pass);
  CHECK(res.precision_achieved >= 8);
  // [pi] = f on the nose for the law built from f
  CHECK(res.pi_endo == res.f);
  // mod p the p-series is X^q
  CHECK(res.F.p_series.coeff(1).residue_is_zero());
  CHECK(res.F.p_series.coeff(2).is_unit());
}

TEST_CASE("construction is deterministic") {
  FieldPtr F = make_qp(3, 12);
  LubinTateResult a = lubin_tate_law(F, lt_standard_f(F), 12);
  LubinTateResult b = lubin_tate_law(F, lt_standard_f(F), 12);
  CHECK(a.F.law == b.F.law);
  CHECK(a.precision_achieved == b.precision_achieved);
}

TEST_CASE("unramified quadratic base field") {
  FieldPtr F = make_local_field(2, {1, 1, 1}, 14);
  REQUIRE(F->q() == 4);
  LubinTateResult res = lubin_tate_law(F, lt_standard_f(F), 12);
  CHECK(res.defining_check.pass);
  CHECK(res.pi_check.pass);
  CHECK(res.precision_achieved >= 6);
}

TEST_CASE("ramified quadratic base field with pi^2 = 2") {
  std::vector<std::vector<mpz_class>> ep = {{mpz_class(-2)}, {mpz_class(0)}, {mpz_class(1)}};
  FieldPtr K = make_local_field(2, {0, 1}, 14, ep);
  REQUIRE(K->ramified());
  REQUIRE(K->q() == 2);
  LubinTateResult res = lubin_tate_law(K, lt_standard_f(K), 12);
  CHECK(res.defining_check.pass);
  CHECK(res.pi_check.pass);
}

TEST_CASE("requested integer endomorphisms verify inside the law") {
  FieldPtr F = make_qp(2, 14);
  std::vector<std::pair<std::string, ExactCoords>> params = {
      {"-1", {mpz_class(-1)}}, {"3", {mpz_class(3)}}};
  LubinTateResult res = lubin_tate_law(F, lt_standard_f(F), 12, params);
  REQUIRE(res.endos.size() == 2);
  // F(X, [-1](X)) = 0 through the truncation
  const auto& neg = res.endos[0].second;
  auto X = Series1<ResidueElement>::monomial(12, ResidueElement::from_int(F, 1), 1);
  auto sum = substitute2(res.F.law, X, neg);
  for (int k = 1; k <= 12; ++k) CHECK(sum.coeff(k).is_zero());
  // [3] has linear coefficient 3
  const auto& three = res.endos[1].second;
  CHECK(three.coeff(1) ==
        ResidueElement::from_int(F, 3).with_precision(three.coeff(1).precision()));
}

TEST_CASE("series that is no uniformizer series is rejected") {
  FieldPtr F = make_qp(2, 12);
  // 2X + X^3 is not congruent to X^q mod p for q = 2
  ExactSeries bad = {{mpz_class(0)}, {mpz_class(2)}, {mpz_class(0)}, {mpz_class(1)}};
  CHECK_THROWS_AS(lubin_tate_law(F, bad, 10), Error);
  try {
    lubin_tate_law(F, bad, 10);
  } catch (const Error& e) {
    CHECK(e.code() == errc::bad_uniformizer_series);
  }
  // X^2 alone misses the pi X linear term
  ExactSeries bad2 = {{mpz_class(0)}, {mpz_class(0)}, {mpz_class(1)}};
  CHECK_THROWS_AS(lubin_tate_law(F, bad2, 10), Error);
}

TEST_CASE("higher torsion counts from the constructed law") {
  FieldPtr F = make_qp(2, 16);
  LubinTateResult res = lubin_tate_law(F, lt_standard_f(F), 16);
  CHECK(torsion_order(res.F, 1) == 2);
  CHECK(torsion_order(res.F, 2) == 4);
}
