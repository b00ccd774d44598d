#pragma once

#include <stdexcept>
#include <string>

namespace lf {

// Every failure the library raises deliberately carries one of these codes.
// The split into "math" and "input" drives the CLI exit code: a mathematical
// check or validation that fails exits 1, an operational problem (bad usage,
// unreadable file, resource cap) exits 2.
enum class errc {
  // arith
  not_irreducible,
  not_eisenstein,
  degree_cap_exceeded,
  not_a_unit,
  ramified_unsupported,
  cap_exceeded,
  nonzero_constant_term,
  non_unit_linear_term,
  precision_exhausted,
  // fgl
  integrality_violation,
  non_integral_parameter,
  not_p_typical,
  not_p_typifiable,
  bad_uniformizer_series,
  truncation_too_small,
  non_unit_scale,
  // groups
  not_associative,
  no_identity,
  no_inverse,
  closure_cap_exceeded,
  budget_exceeded,
  matrix_not_invertible,
  // hkr
  not_a_character,
  // cli
  missing_corpus,
  bad_input,
  internal,
};

const char* errc_name(errc c);

// true for failures of a mathematical check or validation, false for
// operational errors (usage, files, caps, budgets)
bool errc_is_math(errc c);

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

  errc code() const { return code_; }
  bool is_math() const { return errc_is_math(code_); }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::not_irreducible: return "NotIrreducible";
    case errc::not_eisenstein: return "NotEisenstein";
    case errc::degree_cap_exceeded: return "DegreeCapExceeded";
    case errc::not_a_unit: return "NotAUnit";
    case errc::ramified_unsupported: return "RamifiedUnsupported";
    case errc::cap_exceeded: return "CapExceeded";
    case errc::nonzero_constant_term: return "NonzeroConstantTerm";
    case errc::non_unit_linear_term: return "NonUnitLinearTerm";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::integrality_violation: return "IntegralityViolation";
    case errc::non_integral_parameter: return "NonIntegralParameter";
    case errc::not_p_typical: return "NotPTypical";
    case errc::not_p_typifiable: return "NotPTypifiable";
    case errc::bad_uniformizer_series: return "BadUniformizerSeries";
    case errc::truncation_too_small: return "TruncationTooSmall";
    case errc::non_unit_scale: return "NonUnitScale";
    case errc::not_associative: return "NotAssociative";
    case errc::no_identity: return "NoIdentity";
    case errc::no_inverse: return "NoInverse";
    case errc::closure_cap_exceeded: return "ClosureCapExceeded";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::matrix_not_invertible: return "MatrixNotInvertible";
    case errc::not_a_character: return "NotACharacter";
    case errc::missing_corpus: return "MissingCorpus";
    case errc::bad_input: return "BadInput";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

inline bool errc_is_math(errc c) {
  switch (c) {
    case errc::not_irreducible:
    case errc::not_eisenstein:
    case errc::not_a_unit:
    case errc::integrality_violation:
    case errc::non_integral_parameter:
    case errc::not_p_typical:
    case errc::not_p_typifiable:
    case errc::bad_uniformizer_series:
    case errc::non_unit_scale:
    case errc::not_associative:
    case errc::no_identity:
    case errc::no_inverse:
    case errc::matrix_not_invertible:
    case errc::not_a_character:
      return true;
    default:
      return false;
  }
}

}  // namespace lf
