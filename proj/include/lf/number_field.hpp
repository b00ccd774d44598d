#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "lf/fp_poly.hpp"
#include "lf/rational.hpp"

namespace lf {

// Q[x]/(u) with u monic, integer coefficients, irreducible mod p. The prime
// tags the ring so p-integrality questions make sense; since u stays
// irreducible mod p the ring of p-integral elements is exactly the span of
// the monomial basis over Z_(p).
struct NumberFieldCtx {
  long p;
  std::vector<long> u;  // ascending, monic, degree f
  int f;
};

inline std::shared_ptr<const NumberFieldCtx> make_number_field_ctx(long p, std::vector<long> u) {
  while (!u.empty() && u.back() == 0) u.pop_back();
  int f = static_cast<int>(u.size()) - 1;
  if (f < 1 || u.back() != 1) fail(errc::bad_input, "u_poly must be monic of degree >= 1");
  if (f > 8) fail(errc::degree_cap_exceeded, "u_poly degree exceeds the cap of 8");
  fp::Poly ubar(u.begin(), u.end());
  for (auto& c : ubar) c = fp::mod_p(c, p);
  if (!fp::irreducible(ubar, p)) fail(errc::not_irreducible, "u_poly is reducible mod p");
  auto ctx = std::make_shared<NumberFieldCtx>();
  ctx->p = p;
  ctx->u = std::move(u);
  ctx->f = f;
  return ctx;
}

class NumberFieldRational {
public:
  NumberFieldRational(std::shared_ptr<const NumberFieldCtx> ctx, std::vector<mpq_class> coords)
      : ctx_(std::move(ctx)), c_(std::move(coords)) {
    c_.resize(ctx_->f, mpq_class(0));
    for (auto& q : c_) q.canonicalize();
  }

  static NumberFieldRational zero(std::shared_ptr<const NumberFieldCtx> ctx) {
    return NumberFieldRational(std::move(ctx), {});
  }
  static NumberFieldRational from_rational(std::shared_ptr<const NumberFieldCtx> ctx,
                                           const mpq_class& v) {
    return NumberFieldRational(std::move(ctx), {v});
  }
  // the class of x
  static NumberFieldRational gen(std::shared_ptr<const NumberFieldCtx> ctx) {
    return NumberFieldRational(std::move(ctx), {mpq_class(0), mpq_class(1)});
  }

  const std::shared_ptr<const NumberFieldCtx>& ctx() const { return ctx_; }
  const std::vector<mpq_class>& coords() const { return c_; }
  long prime() const { return ctx_->p; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& q) { return q == 0; });
  }

  // min over coordinates of v_p; the valuation of the unramified local field
  // this ring sits inside
  long valuation() const {
    long v = val_infinity;
    for (const auto& q : c_) {
      if (q == 0) continue;
      long vq = valuation_z(mpz_class(q.get_num()), ctx_->p) -
                valuation_z(mpz_class(q.get_den()), ctx_->p);
      v = std::min(v, vq);
    }
    return v;
  }

  bool is_p_integral() const { return valuation() >= 0; }
  bool is_unit() const { return valuation() == 0; }
  bool residue_is_zero() const { return is_zero() || valuation() >= 1; }

  NumberFieldRational make_int(long v) const { return from_rational(ctx_, mpq_class(v)); }
  NumberFieldRational make_zero() const { return make_int(0); }
  NumberFieldRational make_one() const { return make_int(1); }
  NumberFieldRational make_rational(const mpq_class& v) const { return from_rational(ctx_, v); }

  NumberFieldRational operator-() const {
    std::vector<mpq_class> r(c_);
    for (auto& q : r) q = -q;
    return NumberFieldRational(ctx_, std::move(r));
  }
  NumberFieldRational operator+(const NumberFieldRational& o) const {
    check(o);
    std::vector<mpq_class> r(c_);
    for (int i = 0; i < ctx_->f; ++i) r[i] += o.c_[i];
    return NumberFieldRational(ctx_, std::move(r));
  }
  NumberFieldRational operator-(const NumberFieldRational& o) const {
    check(o);
    std::vector<mpq_class> r(c_);
    for (int i = 0; i < ctx_->f; ++i) r[i] -= o.c_[i];
    return NumberFieldRational(ctx_, std::move(r));
  }
  NumberFieldRational operator*(const NumberFieldRational& o) const {
    check(o);
    int f = ctx_->f;
    std::vector<mpq_class> prod(2 * f - 1, mpq_class(0));
    for (int i = 0; i < f; ++i) {
      if (c_[i] == 0) continue;
      for (int j = 0; j < f; ++j) {
        if (o.c_[j] == 0) continue;
        prod[i + j] += c_[i] * o.c_[j];
      }
    }
    // reduce by the monic modulus
    for (int d = 2 * f - 2; d >= f; --d) {
      if (prod[d] == 0) continue;
      for (int i = 0; i < f; ++i) prod[d - f + i] -= prod[d] * ctx_->u[i];
      prod[d] = 0;
    }
    prod.resize(f);
    return NumberFieldRational(ctx_, std::move(prod));
  }
  NumberFieldRational& operator+=(const NumberFieldRational& o) { return *this = *this + o; }
  NumberFieldRational& operator-=(const NumberFieldRational& o) { return *this = *this - o; }
  NumberFieldRational& operator*=(const NumberFieldRational& o) { return *this = *this * o; }

  bool operator==(const NumberFieldRational& o) const {
    check(o);
    return c_ == o.c_;
  }
  bool operator!=(const NumberFieldRational& o) const { return !(*this == o); }

  // exact inverse in the field Q[x]/(u) via the extended Euclidean algorithm
  NumberFieldRational invert() const {
    if (is_zero()) fail(errc::not_a_unit, "reciprocal of zero");
    int f = ctx_->f;
    std::vector<mpq_class> r0(ctx_->u.begin(), ctx_->u.end()), r1(c_);
    std::vector<mpq_class> t0, t1 = {mpq_class(1)};
    auto deg = [](const std::vector<mpq_class>& a) {
      for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0) return i;
      return -1;
    };
    while (deg(r1) >= 0) {
      int d0 = deg(r0), d1 = deg(r1);
      std::vector<mpq_class> q(std::max(0, d0 - d1 + 1), mpq_class(0));
      std::vector<mpq_class> rr = r0;
      while (deg(rr) >= d1 && d1 >= 0) {
        int drr = deg(rr);
        mpq_class c = rr[drr] / r1[d1];
        q[drr - d1] = c;
        for (int i = 0; i <= d1; ++i) rr[drr - d1 + i] -= c * r1[i];
      }
      // t2 = t0 - q * t1
      std::vector<mpq_class> t2(std::max(t0.size(), q.size() + t1.size()), mpq_class(0));
      for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
      for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < t1.size(); ++j) t2[i + j] -= q[i] * t1[j];
      r0 = r1;
      r1 = rr;
      t0 = t1;
      t1 = t2;
    }
    if (deg(r0) != 0) fail(errc::internal, "modulus not coprime to the element");
    mpq_class scale = 1 / r0[0];
    t0.resize(f, mpq_class(0));
    for (auto& q : t0) q *= scale;
    return NumberFieldRational(ctx_, std::move(t0));
  }

  // image in F_q = F_p[x]/(u mod p); requires integrality
  fp::Poly residue_image() const {
    if (!is_p_integral()) fail(errc::not_a_unit, "residue image of a non-integral element");
    fp::Poly r(ctx_->f, 0);
    long p = ctx_->p;
    for (int i = 0; i < ctx_->f; ++i) {
      mpz_class pz(p), num = c_[i].get_num() % pz, den = c_[i].get_den() % pz, inv;
      if (num < 0) num += pz;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
      mpz_class v = (num * inv) % pz;
      r[i] = v.get_si();
    }
    fp::trim(r);
    return r;
  }

  std::string to_string() const {
    std::string s;
    bool first = true;
    for (int i = 0; i < ctx_->f; ++i) {
      if (c_[i] == 0) continue;
      if (!first) s += " + ";
      s += c_[i].get_str();
      if (i == 1) s += "*x";
      if (i > 1) s += "*x^" + std::to_string(i);
      first = false;
    }
    return first ? "0" : s;
  }

private:
  void check(const NumberFieldRational& o) const {
    if (ctx_ != o.ctx_ && (ctx_->p != o.ctx_->p || ctx_->u != o.ctx_->u))
      fail(errc::bad_input, "mixed number-field contexts");
  }

  std::shared_ptr<const NumberFieldCtx> ctx_;
  std::vector<mpq_class> c_;
};

}  // namespace lf
