#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lf/fgl.hpp"
#include "lf/number_field.hpp"

using namespace lf;

namespace {
LocalRational q2(long num, long den = 1) { return LocalRational(2, num, den); }
}

TEST_CASE("logarithm coefficients at height one over Q_2") {
  auto log = hazewinkel_log(2, 1, 16);
  CHECK(log.coeff(1) == q2(1));
  CHECK(log.coeff(2) == q2(-1, 2));
  CHECK(log.coeff(4) == q2(1, 28));
  CHECK(log.coeff(3).is_zero());  // supported on q-powers only
  CHECK(log.coeff(5).is_zero());
}

TEST_CASE("functional equation holds for the constructed logarithm") {
  for (auto [p, n] : {std::pair<long, int>{2, 1}, {3, 1}, {2, 2}}) {
    long q = 1;
    for (int i = 0; i < n; ++i) q *= p;
    auto log = hazewinkel_log(p, n, 30);
    CheckReport r = verify_functional_equation(log, p, q, 30);
    CHECK(r.pass);
  }
}

TEST_CASE("negative controls fail exactly at degree q") {
  CheckReport h = verify_functional_equation(honda_log(2, 1, 20), 2, 2, 20);
  CHECK(!h.pass);
  CHECK(h.first_failure == 2);
  CheckReport a = verify_functional_equation(additive_log(3, 20), 3, 3, 20);
  CHECK(!a.pass);
  CHECK(a.first_failure == 3);
  CheckReport h2 = verify_functional_equation(honda_log(2, 2, 20), 2, 4, 20);
  CHECK(!h2.pass);
  CHECK(h2.first_failure == 4);
}

TEST_CASE("g = log(pX)/p is p-integral and matches frozen coefficients") {
  auto log = hazewinkel_log(2, 1, 20);
  IntegralG ig = integral_g(log, 2);
  CHECK(ig.report.pass);
  CHECK(ig.g.coeff(2) == q2(-1));
  CHECK(ig.g.coeff(4) == q2(2, 7));
}

TEST_CASE("group law is integral with the pinned low coefficients") {
  auto F = hazewinkel_law(2, 1, 12);
  CHECK(!first_non_integral(F.law).has_value());
  CHECK(F.law.coeff(1, 0) == q2(1));
  CHECK(F.law.coeff(0, 1) == q2(1));
  CHECK(F.law.coeff(1, 1) == q2(1));
  CHECK(F.law.coeff(2, 1) == q2(1));
  CHECK(F.law.coeff(1, 2) == q2(1));
  CHECK(F.law.coeff(2, 0).is_zero());
  CHECK(F.law.coeff(3, 0).is_zero());
}

TEST_CASE("law axioms: unit, commutativity, associativity") {
  for (auto [p, n] : {std::pair<long, int>{2, 1}, {3, 1}}) {
    auto F = hazewinkel_law(p, n, 12);
    CheckReport r = verify_law_axioms(F);
    CHECK(r.pass);
  }
  CheckReport m = verify_law_axioms(multiplicative_law(5, 12));
  CHECK(m.pass);
}

TEST_CASE("p-series equals F(pX, X^q) and reduces to X^q mod p") {
  auto F = hazewinkel_law(3, 1, 12);
  CheckReport r = verify_p_corollary(F);
  CHECK(r.pass);
  // mod-p reduction: every coefficient below X^q vanishes, X^q coeff is a unit
  for (int k = 1; k < 3; ++k) CHECK(F.p_series.coeff(k).residue_is_zero());
  CHECK(F.p_series.coeff(3).is_unit());
}

TEST_CASE("integer endomorphisms obey the ring laws") {
  auto F = hazewinkel_law(2, 1, 12);
  auto proto = F.law.proto();
  // [1] = X, [0] = 0
  auto one = endomorphism(F, proto.make_one());
  CHECK(one.coeff(1) == q2(1));
  for (int k = 2; k <= 12; ++k) CHECK(one.coeff(k).is_zero());
  auto zero = endomorphism(F, proto.make_zero());
  for (int k = 1; k <= 12; ++k) CHECK(zero.coeff(k).is_zero());
  // F(X, [-1]X) = 0
  auto neg = endomorphism(F, proto.make_int(-1));
  auto sum = substitute2(F.law, one, neg);
  for (int k = 1; k <= 12; ++k) CHECK(sum.coeff(k).is_zero());
  // additivity and multiplicativity on a small sample
  CHECK(verify_ring_hom(F, proto.make_int(2), proto.make_int(3)).pass);
  CHECK(verify_ring_hom(F, proto.make_int(-1), proto.make_int(2)).pass);
}

TEST_CASE("endomorphisms by a quadratic integer at height two") {
  auto ctx = make_number_field_ctx(2, {1, 1, 1});
  auto proto = NumberFieldRational::zero(ctx);
  auto F = hazewinkel_law_in(proto, 2, 2, 10);
  auto x = NumberFieldRational::gen(ctx);
  CHECK(verify_endomorphism(F, x).pass);
  CHECK(verify_ring_hom(F, x, proto.make_int(2)).pass);
  CHECK(verify_ring_hom(F, x, x).pass);
}

TEST_CASE("araki coordinates of the hazewinkel laws") {
  auto F1 = hazewinkel_law(2, 1, 20);
  auto a1 = ptypical_coordinates(F1, 2);
  REQUIRE(a1.values.size() >= 2);
  CHECK(a1.values[0] == q2(2));
  CHECK(a1.values[1] == q2(1));
  auto F2 = hazewinkel_law(3, 1, 20);
  auto a2 = ptypical_coordinates(F2, 1);
  CHECK(a2.values[0] == LocalRational(3, 3, 1));
  CHECK(a2.values[1] == LocalRational::one(3));
}

TEST_CASE("height two puts the unit in slot n") {
  auto F = hazewinkel_law(2, 2, 20);
  auto a = ptypical_coordinates(F, 3);
  REQUIRE(a.values.size() == 4);
  CHECK(a.values[0] == q2(2));
  CHECK(a.values[1].is_zero());
  CHECK(a.values[2] == q2(1));
  CHECK(a.values[3].is_zero());
  CHECK(a.matched_degree >= 8);
}

TEST_CASE("non-p-typical laws are rejected, typification repairs them") {
  auto M = multiplicative_law(2, 16);
  CHECK_THROWS_AS(ptypical_coordinates(M, 2), Error);
  try {
    ptypical_coordinates(M, 2);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_p_typical);
  }
  // keep only 2-power exponents of log(1+X) and rebuild: now p-typical
  auto tlog = p_typify(*M.logarithm, 2);
  auto T = law_from_log(tlog, 16, 2L, 2L, 1, "p_typified");
  auto a = ptypical_coordinates(T, 2);
  CHECK(a.values[0] == q2(2));
}

TEST_CASE("torsion orders follow the height") {
  auto F1 = hazewinkel_law(2, 1, 20);
  CHECK(torsion_order(F1, 1) == 2);
  CHECK(torsion_order(F1, 2) == 4);
  CHECK(expected_torsion(2, 1, 2) == 4);
  auto F2 = hazewinkel_law(3, 1, 12);
  CHECK(torsion_order(F2, 1) == 3);
  auto F3 = hazewinkel_law(2, 2, 20);
  CHECK(torsion_order(F3, 1) == 4);
}

TEST_CASE("genus values at the pinned spots") {
  CHECK(genus_value(3, 1, 2) == LocalRational(3, -1, 8));
  CHECK(genus_value(2, 1, 1) == q2(-1));
  // p-integral away from m+1 = q^k
  for (long m = 1; m <= 30; ++m) {
    long mp = m + 1;
    bool qpow = false;
    for (long t = 2; t <= mp; t *= 2)
      if (t == mp) qpow = true;
    LocalRational v = genus_value(2, 1, m);
    if (!qpow) CHECK(v.is_p_integral());
  }
}

TEST_CASE("graded rescale keeps the p-series shape for units only") {
  auto F = hazewinkel_law(2, 1, 14);
  auto proto = F.law.proto();
  CheckReport ok = rescale_graded_check(F, {proto.make_one(), proto.make_int(3)});
  CHECK(ok.pass);
  CHECK_THROWS_AS(rescale_graded_check(F, {proto.make_int(2)}), Error);
  try {
    rescale_graded_check(F, {proto.make_int(2)});
  } catch (const Error& e) {
    CHECK(e.code() == errc::non_unit_scale);
  }
}
