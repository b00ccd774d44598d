#include "lf/lubin_tate.hpp"

#include <algorithm>

namespace lf {
namespace {

Series1<ResidueElement> rebase1(const Series1<ResidueElement>& s, const FieldPtr& target) {
  Series1<ResidueElement> r(s.trunc(), ResidueElement::zero(target));
  for (int k = 0; k <= s.trunc(); ++k) r.set(k, s.coeff(k).rebase(target));
  return r;
}

Series2<ResidueElement> rebase2(const Series2<ResidueElement>& s, const FieldPtr& target) {
  Series2<ResidueElement> r(s.trunc(), ResidueElement::zero(target));
  for (int d = 0; d <= s.trunc(); ++d)
    for (int j = 0; j <= d; ++j) r.set(d - j, j, s.coeff(d - j, j).rebase(target));
  return r;
}

// [a]_f by the obstruction recursion: the degree-d correction is
// [f(phi) - phi(f)]_d / (pi^d - pi).  Verified against f-commutation after
// the loop; the recursion itself is never the source of truth.
Series1<ResidueElement> endo_for(const Series1<ResidueElement>& f, const ResidueElement& a,
                                 const ResidueElement& pi, int D) {
  Series1<ResidueElement> phi(D, a.make_zero());
  phi.set(1, a);
  for (int d = 2; d <= D; ++d) {
    Series1<ResidueElement> lhs = substitute1(f, phi);
    Series1<ResidueElement> rhs = substitute1(phi, f);
    for (int m = 1; m < d; ++m)
      if (!(lhs.coeff(m) == rhs.coeff(m)))
        fail(errc::internal, "endomorphism obstruction leaked below its degree");
    ResidueElement b = lhs.coeff(d) - rhs.coeff(d);
    if (!b.is_zero()) {
      ResidueElement w = (pi.pow(d - 1) - pi.make_one()).invert();
      phi.set(d, (b * w).div_pi());
    }
  }
  Series1<ResidueElement> lhs = substitute1(f, phi);
  Series1<ResidueElement> rhs = substitute1(phi, f);
  if (auto m = lhs.first_mismatch(rhs))
    fail(errc::precision_exhausted,
         "[a] does not commute with f at degree " + std::to_string(*m));
  return phi;
}

}  // namespace

ExactSeries lt_standard_f(const FieldPtr& field) {
  ExactSeries f(static_cast<size_t>(field->q()) + 1);
  std::vector<mpz_class> pi(static_cast<size_t>(field->n), 0);
  if (field->e == 1)
    pi[0] = field->p;
  else
    pi[static_cast<size_t>(field->idx(0, 1))] = 1;
  f[1] = std::move(pi);
  f[static_cast<size_t>(field->q())] = {1};
  return f;
}

ExactSeries lt_cyclotomic_f(long p) {
  ExactSeries f(static_cast<size_t>(p) + 1);
  mpz_class binom;
  for (long k = 1; k <= p; ++k) {
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
    f[static_cast<size_t>(k)] = {binom};
  }
  return f;
}

LubinTateResult lubin_tate_law(const FieldPtr& field, const ExactSeries& f_coeffs, int D,
                               const std::vector<std::pair<std::string, ExactCoords>>& endo_params) {
  if (D < 2) fail(errc::bad_input, "lubin_tate_law needs truncation >= 2");
  long q = field->q();
  if (q > D) fail(errc::truncation_too_small, "truncation below the residue-field size");

  // all construction arithmetic happens with D spare digits
  FieldPtr P = field_with_precision(field, field->N + D);
  const ResidueElement zero = ResidueElement::zero(P);
  const ResidueElement pi = ResidueElement::uniformizer(P);

  Series1<ResidueElement> f(D, zero);
  for (size_t k = 0; k < f_coeffs.size(); ++k) {
    if (f_coeffs[k].empty()) continue;
    if (f_coeffs[k].size() > static_cast<size_t>(P->n))
      fail(errc::bad_input, "f coefficient has more coordinates than the tower degree");
    std::vector<mpz_class> c = f_coeffs[k];
    c.resize(static_cast<size_t>(P->n), 0);
    ResidueElement v(P, std::move(c), P->N);
    if (k > static_cast<size_t>(D)) {
      if (!v.is_zero()) fail(errc::bad_input, "f has terms beyond the truncation");
      continue;
    }
    f.set(static_cast<int>(k), v);
  }

  if (!f.coeff(0).is_zero())
    fail(errc::bad_uniformizer_series, "f must have zero constant term");
  if (!(f.coeff(1) == pi))
    fail(errc::bad_uniformizer_series, "f must start with pi X");
  for (int k = 0; k <= D; ++k) {
    const ResidueElement& c = f.coeff(k);
    bool ok = (k == q) ? (c - c.make_one()).residue_is_zero() : c.residue_is_zero();
    if (!ok)
      fail(errc::bad_uniformizer_series,
           "f is not X^q mod the maximal ideal at degree " + std::to_string(k));
  }

  // degree-by-degree solve of f(F) = F(f, f)
  Series2<ResidueElement> F(D, zero);
  F.set(1, 0, zero.make_one());
  F.set(0, 1, zero.make_one());
  for (int d = 2; d <= D; ++d) {
    Series2<ResidueElement> lhs = substitute1(f, F);
    Series2<ResidueElement> rhs = substitute2(F, embed_x(f), embed_y(f));
    for (int dd = 0; dd < d; ++dd)
      for (int j = 0; j <= dd; ++j)
        if (!(lhs.coeff(dd - j, j) == rhs.coeff(dd - j, j)))
          fail(errc::internal, "law obstruction leaked below its degree");
    ResidueElement w = (pi.pow(d - 1) - pi.make_one()).invert();
    for (int j = 0; j <= d; ++j) {
      ResidueElement b = lhs.coeff(d - j, j) - rhs.coeff(d - j, j);
      if (!b.is_zero()) F.set(d - j, j, F.coeff(d - j, j) + (b * w).div_pi());
    }
  }

  // a posteriori: the defining relation on the padded field
  CheckReport defining = CheckReport::ok("lubin_tate_defining", D);
  {
    Series2<ResidueElement> lhs = substitute1(f, F);
    Series2<ResidueElement> rhs = substitute2(F, embed_x(f), embed_y(f));
    if (auto d = lhs.first_mismatch(rhs))
      defining = CheckReport::bad("lubin_tate_defining", D, *d, "f(F(X,Y)) != F(f(X), f(Y))");
  }

  Series1<ResidueElement> pi_phi = endo_for(f, pi, pi, D);
  CheckReport pi_check = CheckReport::ok("lubin_tate_pi_series", D);
  if (auto d = pi_phi.first_mismatch(f))
    pi_check = CheckReport::bad("lubin_tate_pi_series", D, *d, "[pi]_F != f");

  Series1<ResidueElement> p_phi = endo_for(f, zero.make_int(field->p), pi, D);

  LubinTateResult out{
      FormalGroupLaw<ResidueElement>{rebase2(F, field), std::nullopt, std::nullopt,
                                     rebase1(p_phi, field), field->p, q, field->n, "lubin_tate"},
      rebase1(f, field),
      rebase1(pi_phi, field),
      {},
      0,
      std::move(defining),
      std::move(pi_check)};
  for (const auto& [label, coords] : endo_params) {
    if (coords.size() > static_cast<size_t>(P->n))
      fail(errc::bad_input, "multiplier has more coordinates than the tower degree");
    std::vector<mpz_class> c = coords;
    c.resize(static_cast<size_t>(P->n), 0);
    ResidueElement a(P, std::move(c), P->N);
    out.endos.emplace_back(label, rebase1(endo_for(f, a, pi, D), field));
  }
  int achieved = series_precision(out.F.law);
  out.precision_achieved = achieved;
  out.defining_check.precision_achieved = achieved;
  out.pi_check.precision_achieved = achieved;
  return out;
}

}  // namespace lf
