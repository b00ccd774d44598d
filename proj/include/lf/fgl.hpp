#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lf/errors.hpp"
#include "lf/rational.hpp"
#include "lf/report.hpp"
#include "lf/series.hpp"

namespace lf {

inline int default_truncation(long q) {
  return static_cast<int>(std::max<long>(q * q + 4, 20));
}

// A one-dimensional formal group law together with whatever exact data the
// construction mode affords: the logarithm and its inverse exist in the
// torsion-free modes, while residue-mode laws carry only the law itself.
// p_series caches [p]_F; height is the mod-p Weierstrass exponent q = p^height
// when the construction pins it down, 0 otherwise.
template <class R>
struct FormalGroupLaw {
  Series2<R> law;
  std::optional<Series1<R>> logarithm;
  std::optional<Series1<R>> exponential;
  Series1<R> p_series;
  long p = 0;
  long q = 0;
  int height = 0;
  std::string provenance;

  int trunc() const { return law.trunc(); }
};

template <class R>
struct PTypicalCoordinates {
  std::vector<R> values;      // v_0 .. v_kmax
  std::string convention;     // "araki"
  long matched_degree = 0;    // reconstruction verified through this degree
  long residual_degree = 0;   // first unmatched degree past it, 0 if none in range
};

// ---- Hazewinkel logarithm ------------------------------------------------

// log(X) = X + sum_k  prod_{i<=k} (1 - p^{q^i - 1})^{-1} * X^{q^k} / p^k
template <class R>
Series1<R> hazewinkel_log_in(const R& proto, long p, int n, int D) {
  if (n < 1 || D < 1) fail(errc::bad_input, "hazewinkel_log needs n >= 1, D >= 1");
  Series1<R> f(D, proto.make_zero());
  f.set(1, proto.make_one());
  mpz_class q = pow_z(p, static_cast<unsigned long>(n));
  mpz_class qk = 1;  // q^k
  mpq_class c = 1;   // running coefficient
  for (int k = 1;; ++k) {
    qk *= q;
    if (qk > D) break;
    // multiply in p^{-1} (1 - p^{q^k - 1})^{-1}
    mpz_class e = qk - 1;
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), mpz_class(p).get_mpz_t(), e.get_ui());
    c /= mpq_class(mpz_class(1) - pe) * p;
    f.set(static_cast<int>(qk.get_si()), proto.make_rational(c));
  }
  return f;
}

inline Series1<LocalRational> hazewinkel_log(long p, int n, int D) {
  return hazewinkel_log_in(LocalRational::zero(p), p, n, D);
}

// log(X) = sum_k X^{q^k} / p^k; satisfies p log(X) = p X + log(X^q) instead
// of the displayed equation, so it serves as a negative control
inline Series1<LocalRational> honda_log(long p, int n, int D) {
  if (n < 1 || D < 1) fail(errc::bad_input, "honda_log needs n >= 1, D >= 1");
  LocalRational proto = LocalRational::zero(p);
  Series1<LocalRational> f(D, proto);
  f.set(1, proto.make_one());
  mpz_class q = pow_z(p, static_cast<unsigned long>(n));
  mpz_class qk = 1;
  mpq_class c = 1;
  for (int k = 1;; ++k) {
    qk *= q;
    if (qk > D) break;
    c /= p;
    f.set(static_cast<int>(qk.get_si()), proto.make_rational(c));
  }
  return f;
}

// log(X) = X, the additive law's logarithm; another negative control for the
// functional equation once q <= D
inline Series1<LocalRational> additive_log(long p, int D) {
  return Series1<LocalRational>::monomial(D, LocalRational::one(p), 1);
}

// p log(X) = log(pX) + log(X^q), coefficient by coefficient.  The scalar
// identity p = p^{q^k} + p(1 - p^{q^k - 1}) that makes the X^{q^k} column
// balance is recomputed independently as a cross-check.
template <class R>
CheckReport verify_functional_equation(const Series1<R>& log, long p, long q, int D) {
  if (D > log.trunc()) fail(errc::bad_input, "degree exceeds the series truncation");
  if (!log.coeff(0).is_zero() || !(log.coeff(1) == log.proto().make_one()))
    fail(errc::bad_input, "logarithm must be X + higher");
  mpz_class pm = 1;  // p^m
  for (int m = 1; m <= D; ++m) {
    pm *= p;
    R lhs = log.proto().make_rational(mpq_class(p)) * log.coeff(m);
    R rhs = log.proto().make_rational(mpq_class(pm)) * log.coeff(m);
    if (m % q == 0) rhs += log.coeff(static_cast<int>(m / q));
    if (!(lhs == rhs))
      return CheckReport::bad("functional_equation", D, m,
                              "p*log(X) != log(pX) + log(X^q) at degree " + std::to_string(m));
  }
  mpz_class qk = 1;
  for (;;) {
    qk *= q;
    if (qk > D) break;
    mpz_class pqk, pqk1;
    mpz_pow_ui(pqk.get_mpz_t(), mpz_class(p).get_mpz_t(), mpz_class(qk).get_ui());
    mpz_pow_ui(pqk1.get_mpz_t(), mpz_class(p).get_mpz_t(), mpz_class(qk - 1).get_ui());
    if (p != pqk + p * (1 - pqk1))
      fail(errc::internal, "proof identity p = p^{q^k} + p(1 - p^{q^k-1}) broke");
  }
  return CheckReport::ok("functional_equation", D);
}

// g(X) = p^{-1} log(pX); the corollary asserts g is p-integral
template <class R>
struct IntegralG {
  Series1<R> g;
  CheckReport report;
};

template <class R>
IntegralG<R> integral_g(const Series1<R>& log, long p) {
  Series1<R> g = log.zero_like();
  mpq_class pm1 = mpq_class(1) / p;  // p^{m-1}
  for (int m = 1; m <= log.trunc(); ++m) {
    pm1 *= p;
    g.set(m, log.proto().make_rational(pm1) * log.coeff(m));
  }
  auto bad = first_non_integral(g);
  CheckReport rep =
      bad ? CheckReport::bad("g_integrality", log.trunc(), *bad,
                             "coefficient of X^" + std::to_string(*bad) + " is not p-integral")
          : CheckReport::ok("g_integrality", log.trunc());
  return {std::move(g), std::move(rep)};
}

// ---- law construction from a logarithm ------------------------------------

template <class R>
FormalGroupLaw<R> law_from_log(const Series1<R>& log_full, int D, long p, long q, int height,
                               std::string provenance) {
  if (D > log_full.trunc()) fail(errc::bad_input, "law truncation exceeds the logarithm's");
  Series1<R> log = retrunc(log_full, D);
  if (!log.coeff(0).is_zero()) fail(errc::nonzero_constant_term, "logarithm has a constant term");
  if (!(log.coeff(1) == log.proto().make_one()))
    fail(errc::non_unit_linear_term, "logarithm must start with X");
  Series1<R> exp = revert(log);

  Series2<R> F = substitute1(exp, embed_x(log) + embed_y(log));

  if (auto d = first_non_integral(F))
    fail(errc::integrality_violation,
         "law coefficient at total degree " + std::to_string(*d) + " is not p-integral");
  // unit and commutativity are cheap enough to assert at construction;
  // associativity is the expensive axiom and lives in verify_law_axioms
  for (int i = 0; i <= D; ++i) {
    const R want = (i == 1) ? F.proto().make_one() : F.proto().make_zero();
    if (!(F.coeff(i, 0) == want) || !(F.coeff(0, i) == want))
      fail(errc::internal, "F(X,0) != X at degree " + std::to_string(i));
  }
  for (int d = 0; d <= D; ++d)
    for (int j = 0; j + j <= d; ++j)
      if (!(F.coeff(d - j, j) == F.coeff(j, d - j)))
        fail(errc::internal, "law is not commutative at degree " + std::to_string(d));

  Series1<R> ps = substitute1(exp, log.scaled(log.proto().make_int(p)));
  FormalGroupLaw<R> out{std::move(F), std::move(log), std::move(exp), std::move(ps),
                        p,            q,              height,         std::move(provenance)};
  return out;
}

inline FormalGroupLaw<LocalRational> hazewinkel_law(long p, int n, int D) {
  long q = pow_z(p, static_cast<unsigned long>(n)).get_si();
  return law_from_log(hazewinkel_log(p, n, D), D, p, q, n, "hazewinkel");
}

template <class R>
FormalGroupLaw<R> hazewinkel_law_in(const R& proto, long p, int n, int D) {
  long q = pow_z(p, static_cast<unsigned long>(n)).get_si();
  return law_from_log(hazewinkel_log_in(proto, p, n, D), D, p, q, n, "hazewinkel");
}

inline FormalGroupLaw<LocalRational> additive_law(long p, int D) {
  Series1<LocalRational> log(D, LocalRational::zero(p));
  log.set(1, LocalRational::one(p));
  return law_from_log(log, D, p, p, 0, "additive");
}

// multiplicative law X + Y + XY; logarithm is log(1+X) = sum (-1)^{k-1} X^k / k
inline FormalGroupLaw<LocalRational> multiplicative_law(long p, int D) {
  Series1<LocalRational> log(D, LocalRational::zero(p));
  for (int k = 1; k <= D; ++k) log.set(k, LocalRational(p, (k % 2) ? 1 : -1, k));
  FormalGroupLaw<LocalRational> F = law_from_log(log, D, p, p, 1, "multiplicative");
  return F;
}

// unit, commutativity, and the three-variable associativity identity
template <class R>
CheckReport verify_law_axioms(const FormalGroupLaw<R>& F) {
  int D = F.trunc();
  for (int i = 0; i <= D; ++i) {
    const R want = (i == 1) ? F.law.proto().make_one() : F.law.proto().make_zero();
    if (!(F.law.coeff(i, 0) == want))
      return CheckReport::bad("law_axioms", D, i, "F(X,0) != X");
    if (!(F.law.coeff(0, i) == want))
      return CheckReport::bad("law_axioms", D, i, "F(0,Y) != Y");
  }
  for (int d = 0; d <= D; ++d)
    for (int j = 0; j + j <= d; ++j)
      if (!(F.law.coeff(d - j, j) == F.law.coeff(j, d - j)))
        return CheckReport::bad("law_axioms", D, d, "F(X,Y) != F(Y,X)");
  const R zero = F.law.proto().make_zero();
  Series3<R> X = var3<R>(0, D, zero), Z = var3<R>(2, D, zero);
  Series3<R> FXY = embed23(F.law, 0, 1), FYZ = embed23(F.law, 1, 2);
  Series3<R> left = substitute2(F.law, FXY, Z);
  Series3<R> right = substitute2(F.law, X, FYZ);
  if (auto d = left.first_mismatch(right))
    return CheckReport::bad("law_axioms", D, *d, "associativity fails");
  return CheckReport::ok("law_axioms", D);
}

// ---- endomorphisms ---------------------------------------------------------

// [a](X) = exp(a log(X)); integrality of the result is part of the contract
template <class R>
Series1<R> endomorphism(const FormalGroupLaw<R>& F, const R& a) {
  if (!F.logarithm || !F.exponential)
    fail(errc::bad_input, "endomorphism needs a law with a logarithm");
  if (!a.is_p_integral()) fail(errc::non_integral_parameter, "multiplier is not p-integral");
  Series1<R> e = substitute1(*F.exponential, F.logarithm->scaled(a));
  if (!(e.coeff(1) == a)) fail(errc::internal, "endomorphism linear coefficient mismatch");
  if (auto k = first_non_integral(e))
    fail(errc::integrality_violation,
         "[a] coefficient at degree " + std::to_string(*k) + " is not p-integral");
  return e;
}

// F([a]X, [a]Y) = [a]F(X,Y)
template <class R>
CheckReport verify_endomorphism(const FormalGroupLaw<R>& F, const R& a) {
  int D = F.trunc();
  Series1<R> ea = endomorphism(F, a);
  Series2<R> lhs = substitute2(F.law, embed_x(ea), embed_y(ea));
  Series2<R> rhs = substitute1(ea, F.law);
  if (auto d = lhs.first_mismatch(rhs))
    return CheckReport::bad("endomorphism", D, *d, "F([a]X,[a]Y) != [a]F(X,Y)");
  return CheckReport::ok("endomorphism", D);
}

// [a]([b]X) = [ab](X) and F([a]X, [b]X) = [a+b](X)
template <class R>
CheckReport verify_ring_hom(const FormalGroupLaw<R>& F, const R& a, const R& b) {
  int D = F.trunc();
  Series1<R> ea = endomorphism(F, a), eb = endomorphism(F, b);
  Series1<R> compose = substitute1(ea, eb);
  Series1<R> eab = endomorphism(F, a * b);
  if (auto d = compose.first_mismatch(eab))
    return CheckReport::bad("ring_hom", D, *d, "[a]o[b] != [ab]");
  Series1<R> fsum = substitute2(F.law, ea, eb);
  Series1<R> esum = endomorphism(F, a + b);
  if (auto d = fsum.first_mismatch(esum))
    return CheckReport::bad("ring_hom", D, *d, "F([a]X,[b]X) != [a+b]X");
  return CheckReport::ok("ring_hom", D);
}

// [p]_F(X) = F(pX, X^q) exactly, and [p]_F = X^q mod p on the nose
template <class R>
CheckReport verify_p_corollary(const FormalGroupLaw<R>& F) {
  int D = F.trunc();
  if (F.q > D) fail(errc::truncation_too_small, "truncation below q");
  const R zero = F.law.proto().make_zero();
  Series1<R> pX = Series1<R>::monomial(D, zero.make_int(F.p), 1);
  Series1<R> Xq = Series1<R>::monomial(D, zero.make_one(), static_cast<int>(F.q));
  Series1<R> rhs = substitute2(F.law, pX, Xq);
  if (auto d = F.p_series.first_mismatch(rhs))
    return CheckReport::bad("p_corollary", D, *d, "[p]_F != F(pX, X^q)");
  for (int k = 0; k <= D; ++k) {
    const R& c = F.p_series.coeff(k);
    bool good = (k == F.q) ? (c - zero.make_one()).residue_is_zero() : c.residue_is_zero();
    if (!good)
      return CheckReport::bad("p_corollary", D, k, "[p]_F mod p != X^q at degree " + std::to_string(k));
  }
  return CheckReport::ok("p_corollary", D);
}

// ---- p-typical coordinates -------------------------------------------------

// keep only the X^{p^k} coefficients of a logarithm
template <class R>
Series1<R> p_typify(const Series1<R>& log, long p) {
  Series1<R> r = log.zero_like();
  mpz_class pk = 1;
  while (pk <= log.trunc()) {
    int k = static_cast<int>(pk.get_si());
    r.set(k, log.coeff(k));
    pk *= p;
  }
  return r;
}

// solve [p]_F(X) = F-sum of v_k X^{p^k} degree by degree.  v_k enters the sum
// linearly with unit coefficient at degree p^k, so each step is a subtraction;
// every intermediate degree must already match, else the law is not p-typical.
template <class R>
PTypicalCoordinates<R> araki_coordinates(const FormalGroupLaw<R>& F, int kmax,
                                         errc mismatch_error = errc::not_p_typical) {
  long p = F.p;
  int D = F.trunc();
  mpz_class need = 1;
  for (int k = 0; k < kmax; ++k) need *= p;
  if (need > D) fail(errc::truncation_too_small, "truncation below p^kmax");
  if (F.logarithm) {
    mpz_class pk = 1;
    for (int m = 1; m <= D; ++m) {
      while (pk < m) pk *= p;
      if (pk != m && !F.logarithm->coeff(m).is_zero())
        fail(mismatch_error, "logarithm supported off p-power exponents at degree " + std::to_string(m));
    }
  }
  PTypicalCoordinates<R> out;
  out.convention = "araki";
  const Series1<R>& target = F.p_series;
  Series1<R> partial = target.zero_like();
  mpz_class pk = 1;
  int k = 0;
  for (int m = 1; m <= D; ++m) {
    if (k <= kmax && pk == m) {
      R vk = target.coeff(m) - partial.coeff(m);
      out.values.push_back(vk);
      partial = substitute2(F.law, partial, Series1<R>::monomial(D, vk, m));
      ++k;
      pk *= p;
      out.matched_degree = m;
    } else if (partial.coeff(m) == target.coeff(m)) {
      out.matched_degree = m;
    } else {
      // below p^kmax every degree must already balance; past it the first
      // mismatch is just the unsolved tail
      if (k <= kmax)
        fail(mismatch_error, "[p]_F deviates from the p-typical sum at degree " + std::to_string(m));
      out.residual_degree = m;
      break;
    }
  }
  return out;
}

// Araki coordinates of the law as given.  A law that is not p-typical is
// rejected, not silently typified; run the logarithm through p_typify and
// law_from_log first if typification is wanted.  Without a logarithm
// (residue mode) divergence of the solve means not p-typifiable.
template <class R>
PTypicalCoordinates<R> ptypical_coordinates(const FormalGroupLaw<R>& F, int kmax) {
  return araki_coordinates(F, kmax,
                           F.logarithm ? errc::not_p_typical : errc::not_p_typifiable);
}

// ---- torsion counts --------------------------------------------------------

// Weierstrass degree of the r-fold [p] composite mod the maximal ideal;
// equals p^{r n} for a height-n law
inline long expected_torsion(long p, int n, int r) {
  mpz_class t = 1;
  for (int i = 0; i < n * r; ++i) t *= p;
  return t.get_si();
}

template <class R>
long torsion_order(const FormalGroupLaw<R>& F, int r) {
  if (r < 1) fail(errc::bad_input, "torsion_order needs r >= 1");
  if (F.height < 1) fail(errc::bad_input, "torsion_order needs a law of known finite height");
  long want = expected_torsion(F.p, F.height, r);
  if (want > F.trunc())
    fail(errc::truncation_too_small,
         "p^(rn) = " + std::to_string(want) + " exceeds truncation " + std::to_string(F.trunc()));
  Series1<R> t = F.p_series;
  for (int i = 1; i < r; ++i) t = substitute1(t, F.p_series);
  auto w = weierstrass_degree(t);
  if (!w) fail(errc::truncation_too_small, "no unit coefficient within truncation");
  if (*w != want)
    fail(errc::internal, "torsion count " + std::to_string(*w) + " != p^(rn) = " + std::to_string(want));
  return *w;
}

// ---- genus -----------------------------------------------------------------

// value on CP^m: zero unless m + 1 = q^k, where it is
// prod_{1<=i<=k} (1 - p^{q^i - 1})^{-1} * (q/p)^k; cross-checked against
// (m+1) * (X^{m+1} coefficient of the logarithm)
inline LocalRational genus_value(long p, int n, long m) {
  if (m < 0) fail(errc::bad_input, "genus_value needs m >= 0");
  mpz_class q = pow_z(p, static_cast<unsigned long>(n));
  mpz_class qk = 1;
  int k = 0;
  while (qk < m + 1) {
    qk *= q;
    ++k;
  }
  LocalRational out = LocalRational::zero(p);
  if (qk == m + 1) {
    mpq_class c = 1;
    mpz_class qi = 1;
    for (int i = 1; i <= k; ++i) {
      qi *= q;
      mpz_class pe;
      mpz_pow_ui(pe.get_mpz_t(), mpz_class(p).get_mpz_t(), mpz_class(qi - 1).get_ui());
      c /= mpq_class(mpz_class(1) - pe);
    }
    for (int i = 0; i < k; ++i) c *= mpq_class(q) / p;
    out = LocalRational(p, c);
  }
  if (!out.is_p_integral()) fail(errc::internal, "genus value is not p-integral");
  Series1<LocalRational> log = hazewinkel_log(p, n, static_cast<int>(m) + 1);
  LocalRational cross = log.coeff(static_cast<int>(m) + 1) * LocalRational(p, m + 1, 1);
  if (!(cross == out)) fail(errc::internal, "genus value disagrees with (m+1) * log coefficient");
  return out;
}

// ---- graded rescale ----------------------------------------------------------

// F_u(X,Y) = u^{-1} F(uX, uY); the graded p-series identity reads
// [p]_{F_u}(X) = F_u(pX, u^{q-1} X^q)
template <class R>
CheckReport rescale_graded_check(const FormalGroupLaw<R>& F, const std::vector<R>& u_samples) {
  int D = F.trunc();
  const R zero = F.law.proto().make_zero();
  for (const R& u : u_samples) {
    if (!u.is_unit()) fail(errc::non_unit_scale, "rescale parameter is not a unit");
    R uinv = u.invert();
    Series1<R> uX = Series1<R>::monomial(D, u, 1);
    Series2<R> Fu = substitute2(F.law, embed_x(uX), embed_y(uX)).scaled(uinv);
    Series1<R> ps_u = substitute1(F.p_series, uX).scaled(uinv);
    R uq1 = zero.make_one();
    for (long i = 1; i < F.q; ++i) uq1 *= u;
    Series1<R> pX = Series1<R>::monomial(D, zero.make_int(F.p), 1);
    Series1<R> uXq = Series1<R>::monomial(D, uq1, static_cast<int>(F.q));
    Series1<R> rhs = substitute2(Fu, pX, uXq);
    if (auto d = ps_u.first_mismatch(rhs))
      return CheckReport::bad("graded_rescale", D, *d,
                              "[p]_{F_u} != F_u(pX, u^{q-1}X^q) at u = " + u.to_string());
  }
  return CheckReport::ok("graded_rescale", D);
}

}  // namespace lf
