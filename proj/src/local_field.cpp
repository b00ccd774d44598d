#include "lf/local_field.hpp"

#include <algorithm>
#include <map>

#include "lf/rational.hpp"

namespace lf {
namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// product in Z[x]/(u), u monic with integer coefficients; exact
std::vector<mpz_class> step_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                const std::vector<long>& u) {
  int f = static_cast<int>(u.size()) - 1;
  std::vector<mpz_class> prod(std::max(2 * f - 1, 1), 0);
  for (int i = 0; i < f; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f; ++j) {
      if (b[j] == 0) continue;
      prod[i + j] += a[i] * b[j];
    }
  }
  for (int d = 2 * f - 2; d >= f; --d) {
    if (prod[d] == 0) continue;
    for (int i = 0; i < f; ++i) prod[d - f + i] -= prod[d] * u[i];
    prod[d] = 0;
  }
  prod.resize(f);
  return prod;
}

long min_step_valuation(const std::vector<mpz_class>& a, long p) {
  long v = val_infinity;
  for (const auto& c : a)
    if (c != 0) v = std::min(v, valuation_z(c, p));
  return v;
}

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r = a % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

std::vector<mpz_class> LocalField::exact_mul(const std::vector<mpz_class>& a,
                                             const std::vector<mpz_class>& b) const {
  if (e == 1) return step_mul(a, b, u_poly);
  std::vector<std::vector<mpz_class>> A(e), B(e);
  for (int j = 0; j < e; ++j) {
    A[j].assign(a.begin() + j * f, a.begin() + (j + 1) * f);
    B[j].assign(b.begin() + j * f, b.begin() + (j + 1) * f);
  }
  std::vector<std::vector<mpz_class>> C(2 * e - 1, std::vector<mpz_class>(f, 0));
  for (int j1 = 0; j1 < e; ++j1)
    for (int j2 = 0; j2 < e; ++j2) {
      auto t = step_mul(A[j1], B[j2], u_poly);
      for (int i = 0; i < f; ++i) C[j1 + j2][i] += t[i];
    }
  // y^e = -(c_0 + c_1 y + ... + c_{e-1} y^{e-1})
  for (int d = 2 * e - 2; d >= e; --d) {
    bool zero = std::all_of(C[d].begin(), C[d].end(), [](const mpz_class& z) { return z == 0; });
    if (zero) continue;
    for (int j = 0; j < e; ++j) {
      auto t = step_mul(C[d], e_poly[j], u_poly);
      for (int i = 0; i < f; ++i) C[d - e + j][i] -= t[i];
    }
    std::fill(C[d].begin(), C[d].end(), mpz_class(0));
  }
  std::vector<mpz_class> r(n);
  for (int j = 0; j < e; ++j)
    for (int i = 0; i < f; ++i) r[idx(i, j)] = C[j][i];
  return r;
}

FieldPtr make_local_field(long p, std::vector<long> u_poly, int N,
                          const std::vector<std::vector<mpz_class>>& e_poly_raw) {
  if (!is_prime(p)) fail(errc::bad_input, "p must be prime");
  if (N < 1) fail(errc::bad_input, "precision must be at least 1");
  while (u_poly.size() > 1 && u_poly.back() == 0) u_poly.pop_back();
  int f = static_cast<int>(u_poly.size()) - 1;
  if (f < 1 || u_poly.back() != 1) fail(errc::bad_input, "u_poly must be monic of degree >= 1");
  int e = e_poly_raw.empty() ? 1 : static_cast<int>(e_poly_raw.size()) - 1;
  if (e < 1) fail(errc::bad_input, "e_poly must have degree >= 1");
  if (f > 8 || e > 8 || f * e > 8) fail(errc::degree_cap_exceeded, "tower degree ef exceeds 8");

  auto F = std::make_shared<LocalField>();
  F->p = p;
  F->f = f;
  F->e = e;
  F->n = e * f;
  F->N = N;
  F->u_poly = std::move(u_poly);
  F->pN = pow_z(p, static_cast<unsigned long>(N));
  F->p_pow.resize(N + 1);
  for (int k = 0; k <= N; ++k) F->p_pow[k] = pow_z(p, static_cast<unsigned long>(k));
  F->ubar.assign(F->u_poly.begin(), F->u_poly.end());
  for (auto& c : F->ubar) c = fp::mod_p(c, p);
  if (!fp::irreducible(F->ubar, p)) fail(errc::not_irreducible, "u_poly is reducible mod p");

  if (e > 1) {
    // normalize the Eisenstein step: monic over the unramified step
    std::vector<std::vector<mpz_class>> ep(e + 1);
    for (int j = 0; j <= e; ++j) {
      ep[j] = e_poly_raw[j];
      ep[j].resize(f, mpz_class(0));
    }
    bool monic = ep[e][0] == 1;
    for (int i = 1; i < f; ++i) monic = monic && ep[e][i] == 0;
    if (!monic) fail(errc::bad_input, "e_poly must be monic");
    for (int j = 1; j < e; ++j)
      if (min_step_valuation(ep[j], p) < 1)
        fail(errc::not_eisenstein, "e_poly coefficient of y^" + std::to_string(j) +
                                       " is not divisible by p");
    if (min_step_valuation(ep[0], p) != 1)
      fail(errc::not_eisenstein, "e_poly constant term must have valuation exactly 1");
    ep.pop_back();
    F->e_poly = std::move(ep);
  }

  int n = F->n;
  F->mul_table.assign(n, std::vector<std::vector<mpz_class>>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<mpz_class> ea(n, 0), eb(n, 0);
      ea[a] = 1;
      eb[b] = 1;
      F->mul_table[a][b] = F->exact_mul(ea, eb);
    }
  return F;
}

FieldPtr make_qp(long p, int N) { return make_local_field(p, {0, 1}, N); }

FieldPtr field_with_precision(const FieldPtr& field, int N) {
  std::vector<std::vector<mpz_class>> raw;
  if (field->e > 1) {
    raw = field->e_poly;
    std::vector<mpz_class> top(static_cast<size_t>(field->f), 0);
    top[0] = 1;
    raw.push_back(std::move(top));
  }
  return make_local_field(field->p, field->u_poly, N, raw);
}

ResidueElement::ResidueElement(FieldPtr field, std::vector<mpz_class> coords, int prec)
    : F_(std::move(field)), c_(std::move(coords)), prec_(prec) {
  if (prec_ > F_->N) prec_ = F_->N;
  if (prec_ < 1) fail(errc::precision_exhausted, "element has no known digits");
  c_.resize(F_->n, mpz_class(0));
  reduce();
}

void ResidueElement::reduce() {
  for (auto& x : c_) {
    x %= F_->pN;
    if (x < 0) x += F_->pN;
  }
}

ResidueElement ResidueElement::uniformizer(const FieldPtr& field) {
  if (field->e == 1) return from_int(field, field->p);
  std::vector<mpz_class> c(field->n, 0);
  c[field->idx(0, 1)] = 1;
  return ResidueElement(field, std::move(c), field->N);
}

ResidueElement ResidueElement::rebase(const FieldPtr& target) const {
  if (target->p != F_->p || target->u_poly != F_->u_poly || target->e != F_->e)
    fail(errc::bad_input, "rebase requires the same tower");
  return ResidueElement(target, c_, std::min(prec_, target->N));
}

void ResidueElement::check(const ResidueElement& o) const {
  if (F_ == o.F_) return;
  if (F_->p != o.F_->p || F_->u_poly != o.F_->u_poly || F_->e != o.F_->e || F_->N != o.F_->N)
    fail(errc::bad_input, "mixed residue rings");
}

bool ResidueElement::is_zero() const {
  const mpz_class& m = F_->power(prec_);
  for (const auto& x : c_)
    if (x % m != 0) return false;
  return true;
}

fp::Poly ResidueElement::residue_image() const {
  fp::Poly r(F_->f, 0);
  for (int i = 0; i < F_->f; ++i) {
    mpz_class v = c_[i] % F_->p;
    r[i] = v.get_si();
  }
  fp::trim(r);
  return r;
}

ResidueElement ResidueElement::operator-() const {
  std::vector<mpz_class> r(c_);
  for (auto& x : r) x = -x;
  return ResidueElement(F_, std::move(r), prec_);
}

ResidueElement ResidueElement::operator+(const ResidueElement& o) const {
  check(o);
  std::vector<mpz_class> r(c_);
  for (int i = 0; i < F_->n; ++i) r[i] += o.c_[i];
  return ResidueElement(F_, std::move(r), std::min(prec_, o.prec_));
}

ResidueElement ResidueElement::operator-(const ResidueElement& o) const {
  check(o);
  std::vector<mpz_class> r(c_);
  for (int i = 0; i < F_->n; ++i) r[i] -= o.c_[i];
  return ResidueElement(F_, std::move(r), std::min(prec_, o.prec_));
}

ResidueElement ResidueElement::operator*(const ResidueElement& o) const {
  check(o);
  int n = F_->n;
  std::vector<mpz_class> r(n, 0);
  for (int a = 0; a < n; ++a) {
    if (c_[a] == 0) continue;
    for (int b = 0; b < n; ++b) {
      if (o.c_[b] == 0) continue;
      mpz_class t = c_[a] * o.c_[b];
      const auto& row = F_->mul_table[a][b];
      for (int k = 0; k < n; ++k)
        if (row[k] != 0) r[k] += t * row[k];
    }
  }
  return ResidueElement(F_, std::move(r), std::min(prec_, o.prec_));
}

bool ResidueElement::operator==(const ResidueElement& o) const {
  check(o);
  const mpz_class& m = F_->power(std::min(prec_, o.prec_));
  for (int i = 0; i < F_->n; ++i)
    if (mod_pos(c_[i], m) != mod_pos(o.c_[i], m)) return false;
  return true;
}

ResidueElement ResidueElement::invert() const {
  fp::Poly im = residue_image();
  if (fp::is_zero(im)) fail(errc::not_a_unit, "inverse of a non-unit residue element");
  fp::Poly seed = fp::inv_mod(im, F_->ubar, F_->p);
  std::vector<mpz_class> zc(F_->n, 0);
  for (size_t i = 0; i < seed.size(); ++i) zc[i] = seed[i];
  ResidueElement z(F_, std::move(zc), prec_);
  ResidueElement two = make_int(2);
  // Newton: the residual 1 - a*z squares each round
  for (int iter = 0; iter < 64; ++iter) {
    ResidueElement az = (*this) * z;
    if (az == make_one()) return z;
    z = z * (two - az);
  }
  fail(errc::internal, "inversion did not converge");
}

ResidueElement ResidueElement::div_p() const {
  if (prec_ - 1 < 1) fail(errc::precision_exhausted, "division by p with one digit left");
  std::vector<mpz_class> r(c_);
  for (auto& x : r) {
    if (x % F_->p != 0) fail(errc::internal, "element is not divisible by p");
    x /= F_->p;
  }
  return ResidueElement(F_, std::move(r), prec_ - 1);
}

ResidueElement ResidueElement::div_pi() const {
  if (F_->e == 1) return div_p();
  if (prec_ - 1 < 1) fail(errc::precision_exhausted, "division by the uniformizer with one digit left");
  int f = F_->f, e = F_->e;
  const auto& u = F_->u_poly;
  // slices z_j of the dividend; z = pi*w forces
  //   z_0 = -w_{e-1} c_0,  z_j = w_{j-1} - w_{e-1} c_j  (j >= 1)
  std::vector<std::vector<mpz_class>> Z(e);
  for (int j = 0; j < e; ++j) Z[j].assign(c_.begin() + j * f, c_.begin() + (j + 1) * f);
  // c_0 = p * u0 with u0 a unit of the step
  std::vector<mpz_class> u0(f);
  for (int i = 0; i < f; ++i) u0[i] = F_->e_poly[0][i] / F_->p;
  std::vector<mpz_class> u0c(F_->n, 0);
  for (int i = 0; i < f; ++i) u0c[i] = u0[i];
  ResidueElement u0inv = ResidueElement(F_, std::move(u0c), F_->N).invert();
  std::vector<mpz_class> u0inv_step(u0inv.coords().begin(), u0inv.coords().begin() + f);

  std::vector<mpz_class> w_top(f);
  for (int i = 0; i < f; ++i) {
    if (Z[0][i] % F_->p != 0) fail(errc::internal, "element is not divisible by the uniformizer");
    w_top[i] = -(Z[0][i] / F_->p);
  }
  w_top = step_mul(w_top, u0inv_step, u);

  std::vector<mpz_class> r(F_->n, 0);
  for (int j = 1; j < e; ++j) {
    auto corr = step_mul(w_top, F_->e_poly[j], u);
    for (int i = 0; i < f; ++i) r[F_->idx(i, j - 1)] = Z[j][i] + corr[i];
  }
  for (int i = 0; i < f; ++i) r[F_->idx(i, e - 1)] = w_top[i];
  return ResidueElement(F_, std::move(r), prec_ - 1);
}

ResidueElement ResidueElement::pow(const mpz_class& k) const {
  if (k < 0) return invert().pow(-k);
  ResidueElement r = make_one();
  ResidueElement base = *this;
  mpz_class m = k;
  while (m > 0) {
    if (mpz_odd_p(m.get_mpz_t())) r = r * base;
    m >>= 1;
    if (m > 0) base = base * base;
  }
  return r;
}

std::string ResidueElement::to_string() const {
  std::string s = "[";
  for (int i = 0; i < F_->n; ++i) {
    if (i) s += ",";
    s += mod_pos(c_[i], F_->power(prec_)).get_str();
  }
  return s + "]@" + std::to_string(prec_);
}

ResidueElement FrobeniusMap::apply(const ResidueElement& a) const {
  int n = field->n;
  std::vector<mpz_class> r(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a.coords()[i] == 0) continue;
    for (int j = 0; j < n; ++j) r[j] += a.coords()[i] * matrix[j][i];
  }
  return ResidueElement(field, std::move(r), a.precision());
}

FrobeniusMap frobenius_lift(const FieldPtr& field) {
  if (field->ramified()) fail(errc::ramified_unsupported, "Frobenius lift needs e = 1");
  long p = field->p;
  int f = field->f;
  // seed: x^p in the residue field
  fp::Poly xp = {0, 1};
  {
    fp::Poly acc = {1};
    long k = p;
    fp::Poly base = xp;
    while (k > 0) {
      if (k & 1) acc = fp::rem(fp::mul(acc, base, p), field->ubar, p);
      k >>= 1;
      if (k) base = fp::rem(fp::mul(base, base, p), field->ubar, p);
    }
    xp = acc;
  }
  std::vector<mpz_class> sc(field->n, 0);
  for (size_t i = 0; i < xp.size(); ++i) sc[i] = xp[i];
  ResidueElement s(field, std::move(sc), field->N);

  auto eval_u = [&](const ResidueElement& t) {
    ResidueElement v = t.make_int(field->u_poly[f]);
    for (int k = f - 1; k >= 0; --k) v = v * t + t.make_int(field->u_poly[k]);
    return v;
  };
  auto eval_du = [&](const ResidueElement& t) {
    ResidueElement v = t.make_int(f * field->u_poly[f]);
    for (int k = f - 1; k >= 1; --k) v = v * t + t.make_int(k * field->u_poly[k]);
    return v;
  };

  bool converged = false;
  for (int iter = 0; iter < 64; ++iter) {
    ResidueElement us = eval_u(s);
    if (us.is_zero()) {
      converged = true;
      break;
    }
    s = s - us * eval_du(s).invert();
  }
  if (!converged) fail(errc::internal, "Hensel iteration for the Frobenius lift did not converge");

  FrobeniusMap fr{field, s, {}};
  fr.matrix.assign(field->n, std::vector<mpz_class>(field->n, 0));
  ResidueElement power = s.make_one();
  for (int i = 0; i < f; ++i) {
    for (int j = 0; j < f; ++j) fr.matrix[j][i] = power.coords()[j];
    power = power * s;
  }
  // sigma^f = id
  std::vector<mpz_class> xc(field->n, 0);
  xc[1 % field->n] = 1;
  ResidueElement x(field, xc, field->N);
  if (f > 1) {
    ResidueElement t = x;
    for (int k = 0; k < f; ++k) t = fr.apply(t);
    if (!(t == x)) fail(errc::internal, "Frobenius lift does not have order f");
    // and the lift really moves x to x^p mod p
    std::vector<mpz_class> seedc(field->n, 0);
    for (size_t i = 0; i < xp.size(); ++i) seedc[i] = xp[i];
    if (!fp::is_zero((s - ResidueElement(field, seedc, field->N)).residue_image()))
      fail(errc::internal, "Frobenius lift is not congruent to x^p mod p");
  }
  return fr;
}

std::vector<std::vector<mpz_class>> trace_pairing_matrix(const FieldPtr& field, int nu) {
  if (field->ramified()) fail(errc::ramified_unsupported, "trace pairing needs e = 1");
  if (nu < 1) fail(errc::bad_input, "nu must be at least 1");
  int f = field->f;
  mpz_class pnu = pow_z(field->p, static_cast<unsigned long>(nu));
  std::vector<std::vector<mpz_class>> T(f, std::vector<mpz_class>(f));
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) {
      const auto& w = field->mul_table[i][j];
      // trace of multiplication by w: sum over k of coord k of w * b_k
      mpz_class tr = 0;
      for (int k = 0; k < f; ++k) {
        std::vector<mpz_class> ek(f, 0);
        ek[k] = 1;
        tr += field->exact_mul(w, ek)[k];
      }
      T[i][j] = mod_pos(tr, pnu);
    }
  // the form is nondegenerate mod p in the unramified case
  std::vector<std::vector<long>> M(f, std::vector<long>(f));
  for (int i = 0; i < f; ++i)
    for (int j = 0; j < f; ++j) M[i][j] = mpz_class(T[i][j] % field->p).get_si();
  long det = 1;
  for (int col = 0; col < f; ++col) {
    int piv = -1;
    for (int row = col; row < f; ++row)
      if (M[row][col] % field->p != 0) {
        piv = row;
        break;
      }
    if (piv < 0) fail(errc::internal, "trace form is degenerate mod p");
    std::swap(M[col], M[piv]);
    long inv = fp::inv_mod_p(M[col][col], field->p);
    det = fp::mod_p(det * M[col][col], field->p);
    for (int row = col + 1; row < f; ++row) {
      long c = fp::mod_p(M[row][col] * inv, field->p);
      for (int k = col; k < f; ++k) M[row][k] = fp::mod_p(M[row][k] - c * M[col][k], field->p);
    }
  }
  (void)det;
  return T;
}

UnitGroupSample unit_group(const FieldPtr& field, int r, long enumeration_cap) {
  if (r < 1) fail(errc::bad_input, "level r must be at least 1");
  int n = field->n;
  mpz_class total = 1, pr = pow_z(field->p, static_cast<unsigned long>(r));
  for (int k = 0; k < n; ++k) total *= pr;
  if (total > enumeration_cap)
    fail(errc::cap_exceeded, "unit enumeration needs " + total.get_str() +
                                 " candidates, cap is " + std::to_string(enumeration_cap));
  long prl = pr.get_si(), count = total.get_si();
  UnitGroupSample S;
  S.field = field;
  S.r = r;
  S.pr = pr;
  for (long m = 0; m < count; ++m) {
    std::vector<long> coords(n);
    long t = m;
    for (int k = 0; k < n; ++k) {
      coords[k] = t % prl;
      t /= prl;
    }
    bool unit = false;
    for (int i = 0; i < field->f && !unit; ++i) unit = coords[i] % field->p != 0;
    if (unit) S.units.push_back(std::move(coords));
  }
  return S;
}

std::vector<std::vector<long>> UnitGroupSample::mult_matrix(int unit_index) const {
  int n = field->n;
  const auto& alpha = units[static_cast<size_t>(unit_index)];
  std::vector<std::vector<long>> M(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    std::vector<mpz_class> col(n, 0);
    for (int k = 0; k < n; ++k) {
      if (alpha[k] == 0) continue;
      const auto& row = field->mul_table[k][i];
      for (int j = 0; j < n; ++j) col[j] += alpha[k] * row[j];
    }
    for (int j = 0; j < n; ++j) M[j][i] = mpz_class(mod_pos(col[j], pr)).get_si();
  }
  return M;
}

int UnitGroupSample::find(const std::vector<long>& coords) const {
  for (size_t i = 0; i < units.size(); ++i)
    if (units[i] == coords) return static_cast<int>(i);
  return -1;
}

}  // namespace lf
