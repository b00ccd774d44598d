#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>

#include "lf/errors.hpp"

namespace lf {

// valuation of zero
inline constexpr long val_infinity = std::numeric_limits<long>::max();

inline mpz_class pow_z(long base, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), e);
  return r;
}

// v_p(z) for z != 0
inline long valuation_z(const mpz_class& z, long p) {
  if (z == 0) return val_infinity;
  mpz_class rest, pz(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), pz.get_mpz_t()));
}

// Exact rational with a distinguished prime and cached p-adic valuation.
// Stored in lowest terms with positive denominator; arithmetic between
// elements at different primes is refused.
class LocalRational {
public:
  LocalRational(long p, mpq_class v) : p_(p), q_(std::move(v)) {
    q_.canonicalize();
    recache();
  }
  LocalRational(long p, long num, long den) : LocalRational(p, mpq_class(num, den)) {}

  static LocalRational zero(long p) { return LocalRational(p, 0, 1); }
  static LocalRational one(long p) { return LocalRational(p, 1, 1); }

  long prime() const { return p_; }
  const mpq_class& value() const { return q_; }
  long valuation() const { return val_; }

  bool is_zero() const { return q_ == 0; }
  bool is_p_integral() const { return val_ >= 0; }
  // unit of Z_(p): integral with invertible reduction
  bool is_unit() const { return !is_zero() && val_ == 0; }
  // zero image in F_p; the maximal-ideal membership test behind Weierstrass degrees
  bool residue_is_zero() const { return is_zero() || val_ >= 1; }

  LocalRational make_int(long v) const { return LocalRational(p_, v, 1); }
  LocalRational make_zero() const { return make_int(0); }
  LocalRational make_one() const { return make_int(1); }
  LocalRational make_rational(const mpq_class& v) const { return LocalRational(p_, v); }

  LocalRational operator-() const { return LocalRational(p_, mpq_class(-q_)); }
  LocalRational operator+(const LocalRational& o) const {
    check(o);
    return LocalRational(p_, q_ + o.q_);
  }
  LocalRational operator-(const LocalRational& o) const {
    check(o);
    return LocalRational(p_, q_ - o.q_);
  }
  LocalRational operator*(const LocalRational& o) const {
    check(o);
    return LocalRational(p_, q_ * o.q_);
  }
  LocalRational& operator+=(const LocalRational& o) { return *this = *this + o; }
  LocalRational& operator-=(const LocalRational& o) { return *this = *this - o; }
  LocalRational& operator*=(const LocalRational& o) { return *this = *this * o; }

  bool operator==(const LocalRational& o) const {
    check(o);
    return q_ == o.q_;
  }
  bool operator!=(const LocalRational& o) const { return !(*this == o); }

  // exact reciprocal; rejects zero
  LocalRational invert() const {
    if (is_zero()) fail(errc::not_a_unit, "reciprocal of zero");
    return LocalRational(p_, mpq_class(1) / q_);
  }

  // image in F_p as a canonical residue; requires integrality
  long mod_p() const {
    if (!is_p_integral()) fail(errc::not_a_unit, "mod_p of a non-integral rational");
    mpz_class pz(p_), num = q_.get_num() % pz, den = q_.get_den() % pz, inv;
    if (num < 0) num += pz;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0)
      fail(errc::internal, "denominator not invertible mod p");
    mpz_class r = (num * inv) % pz;
    return r.get_si();
  }

  std::string to_string() const { return q_.get_str(); }

private:
  void check(const LocalRational& o) const {
    if (p_ != o.p_) fail(errc::bad_input, "mixed primes in rational arithmetic");
  }
  void recache() {
    if (q_ == 0) {
      val_ = val_infinity;
      return;
    }
    val_ = valuation_z(mpz_class(q_.get_num()), p_) - valuation_z(mpz_class(q_.get_den()), p_);
  }

  long p_;
  mpq_class q_;
  long val_ = val_infinity;
};

}  // namespace lf
