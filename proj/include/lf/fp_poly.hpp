#pragma once

#include <vector>

#include "lf/errors.hpp"

// Small helpers for F_p[x]. Coefficients are canonical residues in [0, p),
// ascending degree, no trailing zeros after trim. Degrees stay tiny (the
// tower degree cap is 8), so the quadratic algorithms are fine.

namespace lf::fp {

using Poly = std::vector<long>;

inline long mod_p(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

// inverse of a mod p, p prime, a not divisible by p
inline long inv_mod_p(long a, long p) {
  a = mod_p(a, p);
  if (a == 0) fail(errc::not_a_unit, "inverse of 0 mod p");
  long t = 0, newt = 1, r = p, newr = a;
  while (newr != 0) {
    long q = r / newr;
    long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  return mod_p(t, p);
}

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly mul(const Poly& a, const Poly& b, long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = mod_p(r[i + j] + a[i] * b[j], p);
  trim(r);
  return r;
}

inline Poly sub(Poly a, const Poly& b, long p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = mod_p(a[i] - b[i], p);
  trim(a);
  return a;
}

// remainder of a by b, b nonzero
inline Poly rem(Poly a, const Poly& b, long p) {
  trim(a);
  int db = degree(b);
  long lead_inv = inv_mod_p(b.back(), p);
  while (degree(a) >= db) {
    long c = mod_p(a.back() * lead_inv, p);
    int shift = degree(a) - db;
    for (int i = 0; i <= db; ++i) a[i + shift] = mod_p(a[i + shift] - c * b[i], p);
    trim(a);
  }
  return a;
}

inline bool is_zero(const Poly& a) {
  for (long c : a)
    if (c != 0) return false;
  return true;
}

// exhaustive divisor search; degrees are capped at 8 so p^(f/2) stays small
inline bool irreducible(const Poly& u, long p) {
  Poly a = u;
  trim(a);
  int f = degree(a);
  if (f < 1) return false;
  for (int d = 1; 2 * d <= f; ++d) {
    // all monic candidates of degree d
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long idx = 0; idx < count; ++idx) {
      Poly cand(d + 1, 0);
      long t = idx;
      for (int i = 0; i < d; ++i) {
        cand[i] = t % p;
        t /= p;
      }
      cand[d] = 1;
      if (is_zero(rem(a, cand, p))) return false;
    }
  }
  return true;
}

// inverse of a in F_p[x]/(u); a nonzero mod (u, p)
inline Poly inv_mod(const Poly& a0, const Poly& u, long p) {
  Poly r0 = u, r1 = rem(a0, u, p);
  if (is_zero(r1)) fail(errc::not_a_unit, "inverse of 0 in the residue field");
  Poly t0 = {}, t1 = {1};
  while (!is_zero(r1)) {
    // divide r0 by r1
    Poly q;
    Poly rr = r0;
    int d1 = degree(r1);
    long lead_inv = inv_mod_p(r1.back(), p);
    q.assign(std::max(0, degree(rr) - d1 + 1), 0);
    while (degree(rr) >= d1) {
      long c = mod_p(rr.back() * lead_inv, p);
      int shift = degree(rr) - d1;
      q[shift] = c;
      for (int i = 0; i <= d1; ++i) rr[i + shift] = mod_p(rr[i + shift] - c * r1[i], p);
      trim(rr);
    }
    Poly t2 = sub(t0, mul(q, t1, p), p);
    r0 = r1;
    r1 = rr;
    t0 = t1;
    t1 = t2;
  }
  if (degree(r0) != 0) fail(errc::not_a_unit, "element shares a factor with the modulus");
  long c = inv_mod_p(r0[0], p);
  Poly res = t0;
  for (auto& x : res) x = mod_p(x * c, p);
  trim(res);
  return res;
}

}  // namespace lf::fp
