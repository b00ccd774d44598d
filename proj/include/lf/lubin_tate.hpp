#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "lf/fgl.hpp"
#include "lf/local_field.hpp"
#include "lf/report.hpp"
#include "lf/series.hpp"

namespace lf {

// Exact input data for residue-mode constructions: an element of o_L as
// integer coordinates in the tower basis, a series as one coordinate vector
// per exponent (missing or empty entries mean zero).
using ExactCoords = std::vector<mpz_class>;
using ExactSeries = std::vector<ExactCoords>;

struct LubinTateResult {
  FormalGroupLaw<ResidueElement> F;   // over the requested field
  Series1<ResidueElement> f;          // the uniformizer series, same field
  Series1<ResidueElement> pi_endo;    // [pi]_F computed independently of f
  std::vector<std::pair<std::string, Series1<ResidueElement>>> endos;
  int precision_achieved = 0;         // min coefficient precision of F
  CheckReport defining_check;         // f(F(X,Y)) = F(f(X), f(Y))
  CheckReport pi_check;               // [pi]_F = f
};

// f = pi X + X^{q} with q the residue-field size
ExactSeries lt_standard_f(const FieldPtr& field);
// f = (1+X)^p - 1, a uniformizer series for Q_p
ExactSeries lt_cyclotomic_f(long p);

// Constructs the formal group law admitting f as its [pi] endomorphism.
// The recursion runs on a copy of the field padded to precision N + D so the
// one-digit loss per obstruction division still leaves N digits; the returned
// series live on the requested field.  Both defining identities are verified
// a posteriori and reported, never assumed from the recursion.
LubinTateResult lubin_tate_law(
    const FieldPtr& field, const ExactSeries& f_coeffs, int D,
    const std::vector<std::pair<std::string, ExactCoords>>& endo_params = {});

}  // namespace lf
