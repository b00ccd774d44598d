#pragma once

#include <algorithm>
#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lf/errors.hpp"

// Dense truncated power series in one, two, and three variables over an exact
// coefficient ring R. R needs ring operators, ==, is_zero, is_unit, invert,
// make_int/make_zero/make_one, residue_is_zero, is_p_integral; residue-mode
// coefficients also expose precision(). Two- and three-variable series keep
// all monomials of total degree <= D in a triangular dense layout.

namespace lf {

template <class R>
int coefficient_precision(const R& c) {
  if constexpr (requires { c.precision(); })
    return c.precision();
  else
    return INT_MAX;
}

template <class R>
class Series1 {
public:
  Series1(int trunc, const R& zero) : D_(trunc), c_(static_cast<size_t>(trunc) + 1, zero) {
    if (trunc < 1) fail(errc::truncation_too_small, "truncation must be at least 1");
  }

  int trunc() const { return D_; }
  const R& coeff(int k) const { return c_[static_cast<size_t>(k)]; }
  void set(int k, R v) { c_[static_cast<size_t>(k)] = std::move(v); }
  const R& proto() const { return c_[0]; }

  Series1 zero_like() const { return Series1(D_, proto().make_zero()); }
  Series1 one_like() const {
    Series1 r = zero_like();
    r.set(0, proto().make_one());
    return r;
  }
  static Series1 monomial(int trunc, const R& coeff, int k) {
    Series1 r(trunc, coeff.make_zero());
    if (k <= trunc) r.set(k, coeff);
    return r;
  }

  bool is_all_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  Series1 operator+(const Series1& o) const {
    match(o);
    Series1 r(*this);
    for (int k = 0; k <= D_; ++k) r.c_[k] += o.c_[k];
    return r;
  }
  Series1 operator-(const Series1& o) const {
    match(o);
    Series1 r(*this);
    for (int k = 0; k <= D_; ++k) r.c_[k] -= o.c_[k];
    return r;
  }
  Series1 operator-() const {
    Series1 r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Series1 operator*(const Series1& o) const {
    match(o);
    Series1 r = zero_like();
    for (int a = 0; a <= D_; ++a) {
      if (c_[a].is_zero()) continue;
      for (int b = 0; a + b <= D_; ++b) {
        if (o.c_[b].is_zero()) continue;
        r.c_[a + b] += c_[a] * o.c_[b];
      }
    }
    return r;
  }
  Series1 scaled(const R& s) const {
    Series1 r(*this);
    for (auto& x : r.c_) x = s * x;
    return r;
  }
  // this += s * o
  void axpy(const R& s, const Series1& o) {
    match(o);
    if (s.is_zero()) return;
    for (int k = 0; k <= D_; ++k)
      if (!o.c_[k].is_zero()) c_[k] += s * o.c_[k];
  }

  bool operator==(const Series1& o) const { return !first_mismatch(o).has_value(); }
  bool operator!=(const Series1& o) const { return first_mismatch(o).has_value(); }

  std::optional<long> first_mismatch(const Series1& o) const {
    match(o);
    for (int k = 0; k <= D_; ++k)
      if (!(c_[k] == o.c_[k])) return k;
    return std::nullopt;
  }

  void match(const Series1& o) const {
    if (D_ != o.D_) fail(errc::bad_input, "mixed truncations");
  }

private:
  int D_;
  std::vector<R> c_;
};

template <class R>
class Series2 {
public:
  Series2(int trunc, const R& zero)
      : D_(trunc), c_(static_cast<size_t>((trunc + 1) * (trunc + 2) / 2), zero) {
    if (trunc < 1) fail(errc::truncation_too_small, "truncation must be at least 1");
  }

  static size_t index(int i, int j) {
    int d = i + j;
    return static_cast<size_t>(d * (d + 1) / 2 + j);
  }

  int trunc() const { return D_; }
  const R& coeff(int i, int j) const { return c_[index(i, j)]; }
  void set(int i, int j, R v) { c_[index(i, j)] = std::move(v); }
  const R& proto() const { return c_[0]; }

  Series2 zero_like() const { return Series2(D_, proto().make_zero()); }
  Series2 one_like() const {
    Series2 r = zero_like();
    r.set(0, 0, proto().make_one());
    return r;
  }

  bool is_all_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  Series2 operator+(const Series2& o) const {
    match(o);
    Series2 r(*this);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
    return r;
  }
  Series2 operator-(const Series2& o) const {
    match(o);
    Series2 r(*this);
    for (size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
    return r;
  }
  Series2 operator-() const {
    Series2 r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  Series2 operator*(const Series2& o) const {
    match(o);
    Series2 r = zero_like();
    for (int d1 = 0; d1 <= D_; ++d1)
      for (int j1 = 0; j1 <= d1; ++j1) {
        const R& a = coeff(d1 - j1, j1);
        if (a.is_zero()) continue;
        for (int d2 = 0; d1 + d2 <= D_; ++d2)
          for (int j2 = 0; j2 <= d2; ++j2) {
            const R& b = o.coeff(d2 - j2, j2);
            if (b.is_zero()) continue;
            r.c_[index(d1 + d2 - j1 - j2, j1 + j2)] += a * b;
          }
      }
    return r;
  }
  Series2 scaled(const R& s) const {
    Series2 r(*this);
    for (auto& x : r.c_) x = s * x;
    return r;
  }
  void axpy(const R& s, const Series2& o) {
    match(o);
    if (s.is_zero()) return;
    for (size_t k = 0; k < c_.size(); ++k)
      if (!o.c_[k].is_zero()) c_[k] += s * o.c_[k];
  }

  bool operator==(const Series2& o) const { return !first_mismatch(o).has_value(); }
  bool operator!=(const Series2& o) const { return first_mismatch(o).has_value(); }

  // lowest total degree holding a differing coefficient
  std::optional<long> first_mismatch(const Series2& o) const {
    match(o);
    for (int d = 0; d <= D_; ++d)
      for (int j = 0; j <= d; ++j)
        if (!(coeff(d - j, j) == o.coeff(d - j, j))) return d;
    return std::nullopt;
  }

  void match(const Series2& o) const {
    if (D_ != o.D_) fail(errc::bad_input, "mixed truncations");
  }

private:
  int D_;
  std::vector<R> c_;
};

template <class R>
class Series3 {
public:
  Series3(int trunc, const R& zero)
      : D_(trunc),
        c_(static_cast<size_t>((trunc + 1) * (trunc + 2) * (trunc + 3) / 6), zero) {
    if (trunc < 1) fail(errc::truncation_too_small, "truncation must be at least 1");
  }

  // monomials ordered by total degree d, then s = j + k, then k
  static size_t index(int i, int j, int k) {
    int d = i + j + k, s = j + k;
    return static_cast<size_t>(d * (d + 1) * (d + 2) / 6 + s * (s + 1) / 2 + k);
  }

  int trunc() const { return D_; }
  const R& coeff(int i, int j, int k) const { return c_[index(i, j, k)]; }
  void set(int i, int j, int k, R v) { c_[index(i, j, k)] = std::move(v); }
  const R& proto() const { return c_[0]; }

  Series3 zero_like() const { return Series3(D_, proto().make_zero()); }
  Series3 one_like() const {
    Series3 r = zero_like();
    r.set(0, 0, 0, proto().make_one());
    return r;
  }

  Series3 operator+(const Series3& o) const {
    match(o);
    Series3 r(*this);
    for (size_t t = 0; t < c_.size(); ++t) r.c_[t] += o.c_[t];
    return r;
  }
  Series3 operator-(const Series3& o) const {
    match(o);
    Series3 r(*this);
    for (size_t t = 0; t < c_.size(); ++t) r.c_[t] -= o.c_[t];
    return r;
  }
  Series3 operator*(const Series3& o) const {
    match(o);
    Series3 r = zero_like();
    for (int d1 = 0; d1 <= D_; ++d1)
      for (int s1 = 0; s1 <= d1; ++s1)
        for (int k1 = 0; k1 <= s1; ++k1) {
          const R& a = coeff(d1 - s1, s1 - k1, k1);
          if (a.is_zero()) continue;
          for (int d2 = 0; d1 + d2 <= D_; ++d2)
            for (int s2 = 0; s2 <= d2; ++s2)
              for (int k2 = 0; k2 <= s2; ++k2) {
                const R& b = o.coeff(d2 - s2, s2 - k2, k2);
                if (b.is_zero()) continue;
                r.c_[index(d1 + d2 - s1 - s2, s1 + s2 - k1 - k2, k1 + k2)] += a * b;
              }
        }
    return r;
  }
  void axpy(const R& s, const Series3& o) {
    match(o);
    if (s.is_zero()) return;
    for (size_t t = 0; t < c_.size(); ++t)
      if (!o.c_[t].is_zero()) c_[t] += s * o.c_[t];
  }

  bool operator==(const Series3& o) const { return !first_mismatch(o).has_value(); }
  bool operator!=(const Series3& o) const { return first_mismatch(o).has_value(); }

  std::optional<long> first_mismatch(const Series3& o) const {
    match(o);
    for (int d = 0; d <= D_; ++d)
      for (int s = 0; s <= d; ++s)
        for (int k = 0; k <= s; ++k)
          if (!(coeff(d - s, s - k, k) == o.coeff(d - s, s - k, k))) return d;
    return std::nullopt;
  }

  void match(const Series3& o) const {
    if (D_ != o.D_) fail(errc::bad_input, "mixed truncations");
  }

private:
  int D_;
  std::vector<R> c_;
};

// ---- substitution -----------------------------------------------------

template <class S>
void require_no_constant_term(const S& a) {
  if constexpr (requires(const S& s) { s.coeff(0); }) {
    if (!a.coeff(0).is_zero()) fail(errc::nonzero_constant_term, "argument has a constant term");
  } else if constexpr (requires(const S& s) { s.coeff(0, 0); }) {
    if (!a.coeff(0, 0).is_zero()) fail(errc::nonzero_constant_term, "argument has a constant term");
  } else {
    if (!a.coeff(0, 0, 0).is_zero())
      fail(errc::nonzero_constant_term, "argument has a constant term");
  }
}

// f(A) for a one-variable f and an argument with zero constant term, in any
// of the series shapes
template <class R, class S>
S substitute1(const Series1<R>& f, const S& A) {
  require_no_constant_term(A);
  int D = f.trunc();
  if (D != A.trunc()) fail(errc::bad_input, "mixed truncations");
  int top = 0;
  for (int k = 0; k <= D; ++k)
    if (!f.coeff(k).is_zero()) top = k;
  S r = A.zero_like();
  if (!f.coeff(0).is_zero()) r.axpy(f.coeff(0), A.one_like());
  S apow = A.one_like();
  for (int k = 1; k <= top; ++k) {
    apow = apow * A;
    if (!f.coeff(k).is_zero()) r.axpy(f.coeff(k), apow);
  }
  return r;
}

// F(A, B) for a two-variable F; arguments must have zero constant term
template <class R, class S>
S substitute2(const Series2<R>& F, const S& A, const S& B) {
  require_no_constant_term(A);
  require_no_constant_term(B);
  int D = F.trunc();
  if (D != A.trunc() || D != B.trunc()) fail(errc::bad_input, "mixed truncations");
  int maxi = 0, maxj = 0;
  for (int i = 0; i <= D; ++i)
    for (int j = 0; i + j <= D; ++j)
      if (!F.coeff(i, j).is_zero()) {
        maxi = std::max(maxi, i);
        maxj = std::max(maxj, j);
      }
  std::vector<S> bpow;
  bpow.push_back(B.one_like());
  for (int j = 1; j <= maxj; ++j) bpow.push_back(bpow.back() * B);
  S r = A.zero_like();
  S apow = A.one_like();
  for (int i = 0; i <= maxi; ++i) {
    if (i > 0) apow = apow * A;
    S row = A.zero_like();
    bool any = false;
    for (int j = 0; i + j <= D; ++j) {
      if (F.coeff(i, j).is_zero()) continue;
      row.axpy(F.coeff(i, j), bpow[static_cast<size_t>(j)]);
      any = true;
    }
    if (any) r = r + apow * row;
  }
  return r;
}

// ---- embeddings --------------------------------------------------------

template <class R>
Series2<R> embed_x(const Series1<R>& f) {
  Series2<R> r(f.trunc(), f.proto().make_zero());
  for (int k = 0; k <= f.trunc(); ++k)
    if (!f.coeff(k).is_zero()) r.set(k, 0, f.coeff(k));
  return r;
}

template <class R>
Series2<R> embed_y(const Series1<R>& f) {
  Series2<R> r(f.trunc(), f.proto().make_zero());
  for (int k = 0; k <= f.trunc(); ++k)
    if (!f.coeff(k).is_zero()) r.set(0, k, f.coeff(k));
  return r;
}

// variables of the three-variable ring
template <class R>
Series3<R> var3(int which, int trunc, const R& zero) {
  Series3<R> r(trunc, zero);
  r.set(which == 0 ? 1 : 0, which == 1 ? 1 : 0, which == 2 ? 1 : 0, zero.make_one());
  return r;
}

// place a two-variable series on variables (a, b) of the three-variable ring
template <class R>
Series3<R> embed23(const Series2<R>& F, int a, int b) {
  Series3<R> r(F.trunc(), F.proto().make_zero());
  for (int d = 0; d <= F.trunc(); ++d)
    for (int j = 0; j <= d; ++j) {
      const R& c = F.coeff(d - j, j);
      if (c.is_zero()) continue;
      int exps[3] = {0, 0, 0};
      exps[a] = d - j;
      exps[b] = j;
      r.set(exps[0], exps[1], exps[2], c);
    }
  return r;
}

// ---- reversion and reduction -------------------------------------------

// compositional inverse: g with f(g(X)) = X through the truncation
template <class R>
Series1<R> revert(const Series1<R>& f) {
  if (!f.coeff(0).is_zero()) fail(errc::nonzero_constant_term, "reversion needs f(0) = 0");
  if (!f.coeff(1).is_unit()) fail(errc::non_unit_linear_term, "reversion needs a unit linear term");
  int D = f.trunc();
  R c1inv = f.coeff(1).invert();
  Series1<R> g = f.zero_like();
  g.set(1, c1inv);
  for (int k = 2; k <= D; ++k) {
    Series1<R> fg = substitute1(f, g);
    g.set(k, -(c1inv * fg.coeff(k)));
  }
  return g;
}

// smallest exponent whose coefficient stays a unit after reduction mod the
// maximal ideal; empty when the whole reduction vanishes
template <class R>
std::optional<long> weierstrass_degree(const Series1<R>& f) {
  for (int k = 0; k <= f.trunc(); ++k)
    if (!f.coeff(k).residue_is_zero()) return k;
  return std::nullopt;
}

template <class R>
int series_precision(const Series1<R>& f) {
  int m = INT_MAX;
  for (int k = 0; k <= f.trunc(); ++k) m = std::min(m, coefficient_precision(f.coeff(k)));
  return m;
}

template <class R>
int series_precision(const Series2<R>& F) {
  int m = INT_MAX;
  for (int d = 0; d <= F.trunc(); ++d)
    for (int j = 0; j <= d; ++j) m = std::min(m, coefficient_precision(F.coeff(d - j, j)));
  return m;
}

// first total degree with a non p-integral coefficient
template <class R>
std::optional<long> first_non_integral(const Series2<R>& F) {
  for (int d = 0; d <= F.trunc(); ++d)
    for (int j = 0; j <= d; ++j)
      if (!F.coeff(d - j, j).is_p_integral()) return d;
  return std::nullopt;
}

template <class R>
std::optional<long> first_non_integral(const Series1<R>& f) {
  for (int k = 0; k <= f.trunc(); ++k)
    if (!f.coeff(k).is_p_integral()) return k;
  return std::nullopt;
}

// copy onto a different truncation; shortening discards, lengthening pads with zero
template <class R>
Series1<R> retrunc(const Series1<R>& f, int D) {
  Series1<R> r(D, f.proto().make_zero());
  for (int k = 0; k <= std::min(D, f.trunc()); ++k) r.set(k, f.coeff(k));
  return r;
}

template <class R>
Series2<R> retrunc(const Series2<R>& F, int D) {
  Series2<R> r(D, F.proto().make_zero());
  for (int d = 0; d <= std::min(D, F.trunc()); ++d)
    for (int j = 0; j <= d; ++j) r.set(d - j, j, F.coeff(d - j, j));
  return r;
}

}  // namespace lf
