#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lf/errors.hpp"
#include "lf/fp_poly.hpp"

namespace lf {

// Tower presentation of a local field L over Q_p: an unramified step
// Q_p[x]/(u_poly) of residue degree f, then an optional Eisenstein step
// adjoining a root y of e_poly (degree e, coefficients in the unramified
// step). Elements of o_L/p^N live in the monomial basis x^i y^j with integer
// coordinates reduced mod p^N; basis index is i + f*j.
//
// The structure constants mul_table are exact integers (reduction only ever
// uses the monic integral moduli), so the same field object serves any
// working precision up to N.
struct LocalField {
  long p = 2;
  int f = 1, e = 1, n = 1;
  int N = 16;
  std::vector<long> u_poly;                      // ascending, monic, degree f
  std::vector<std::vector<mpz_class>> e_poly;    // c_0..c_{e-1}, step coords; empty when e == 1
  mpz_class pN;                                  // p^N
  std::vector<mpz_class> p_pow;                  // p^0 .. p^N
  fp::Poly ubar;                                 // u_poly mod p
  std::vector<std::vector<std::vector<mpz_class>>> mul_table;  // [n][n] -> n exact coords

  const mpz_class& power(int k) const { return p_pow[static_cast<size_t>(k)]; }

  int idx(int i, int j) const { return i + f * j; }
  long q() const {  // residue field size p^f
    long r = 1;
    for (int i = 0; i < f; ++i) r *= p;
    return r;
  }
  bool ramified() const { return e > 1; }

  // exact product of coordinate vectors over Z (no reduction mod p^N)
  std::vector<mpz_class> exact_mul(const std::vector<mpz_class>& a,
                                   const std::vector<mpz_class>& b) const;
};

using FieldPtr = std::shared_ptr<const LocalField>;

// validates the tower: u_poly monic irreducible mod p, e_poly Eisenstein over
// the unramified step, ef <= 8
FieldPtr make_local_field(long p, std::vector<long> u_poly, int N,
                          const std::vector<std::vector<mpz_class>>& e_poly_raw = {});

// convenience: Q_p itself
FieldPtr make_qp(long p, int N);

// the same tower served at a different precision
FieldPtr field_with_precision(const FieldPtr& field, int N);

class ResidueElement {
public:
  ResidueElement(FieldPtr field, std::vector<mpz_class> coords, int prec);

  static ResidueElement zero(const FieldPtr& field) {
    return ResidueElement(field, std::vector<mpz_class>(field->n, 0), field->N);
  }
  static ResidueElement from_int(const FieldPtr& field, long v) {
    std::vector<mpz_class> c(field->n, 0);
    c[0] = v;
    return ResidueElement(field, std::move(c), field->N);
  }
  // the class of y when ramified, else p
  static ResidueElement uniformizer(const FieldPtr& field);

  const FieldPtr& field() const { return F_; }
  const std::vector<mpz_class>& coords() const { return c_; }
  int precision() const { return prec_; }

  ResidueElement with_precision(int prec) const { return ResidueElement(F_, c_, prec); }
  // reinterpret on a same-tower field with a different N
  ResidueElement rebase(const FieldPtr& target) const;

  bool is_zero() const;
  // image in F_q = F_p[x]/(ubar); needs at least one digit of precision
  fp::Poly residue_image() const;
  bool residue_is_zero() const { return fp::is_zero(residue_image()); }
  bool is_unit() const { return !residue_is_zero(); }
  bool is_p_integral() const { return true; }

  ResidueElement make_int(long v) const { return from_int(F_, v).with_precision(prec_); }
  ResidueElement make_zero() const { return make_int(0); }
  ResidueElement make_one() const { return make_int(1); }

  ResidueElement operator-() const;
  ResidueElement operator+(const ResidueElement& o) const;
  ResidueElement operator-(const ResidueElement& o) const;
  ResidueElement operator*(const ResidueElement& o) const;
  ResidueElement& operator+=(const ResidueElement& o) { return *this = *this + o; }
  ResidueElement& operator-=(const ResidueElement& o) { return *this = *this - o; }
  ResidueElement& operator*=(const ResidueElement& o) { return *this = *this * o; }

  // equality compares coordinates mod p^min(prec, o.prec)
  bool operator==(const ResidueElement& o) const;
  bool operator!=(const ResidueElement& o) const { return !(*this == o); }

  // Hensel inversion; the argument must be a unit of o_L
  ResidueElement invert() const;

  // exact division by p (all coordinates divisible); costs one digit
  ResidueElement div_p() const;
  // exact division by the uniformizer; costs one digit of tracked precision
  ResidueElement div_pi() const;

  ResidueElement pow(const mpz_class& k) const;

  std::string to_string() const;

private:
  void check(const ResidueElement& o) const;
  void reduce();

  FieldPtr F_;
  std::vector<mpz_class> c_;
  int prec_;
};

// Frobenius lift on an unramified field: the ring map sending x to the unique
// root of u_poly congruent to x^p mod p. matrix column i holds the
// coordinates of sigma(x^i) mod p^N. sigma^f = id is asserted on build.
struct FrobeniusMap {
  FieldPtr field;
  ResidueElement x_image;
  std::vector<std::vector<mpz_class>> matrix;  // [row j][col i]

  ResidueElement apply(const ResidueElement& a) const;
};

FrobeniusMap frobenius_lift(const FieldPtr& field);

// Gram matrix T_ij = Tr(b_i b_j) of the trace form on the unramified step,
// entries canonical residues mod p^nu. Tr is the matrix trace of
// multiplication, equal to the sum of the f Frobenius conjugates; the matrix
// is checked to be invertible mod p. Ramified fields are refused.
std::vector<std::vector<mpz_class>> trace_pairing_matrix(const FieldPtr& field, int nu);

// All units of o_L/p^r, coordinates enumerated with basis index 0 fastest.
// Unit count is p^(rn) - p^(rn-f).
struct UnitGroupSample {
  FieldPtr field;
  int r = 1;
  mpz_class pr;
  std::vector<std::vector<long>> units;  // each size n, entries in [0, p^r)

  // column i = coordinates of alpha * b_i mod p^r
  std::vector<std::vector<long>> mult_matrix(int unit_index) const;
  // index into units, or -1
  int find(const std::vector<long>& coords) const;
};

UnitGroupSample unit_group(const FieldPtr& field, int r, long enumeration_cap = 1000000);

}  // namespace lf
