#include "lf/hkr.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace lf {
namespace {

long gcd_l(long a, long b) { return std::gcd(a, b); }

long mod_inv_l(long a, long m) {
  long t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
  while (newr != 0) {
    long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) fail(errc::internal, "element not invertible in Z/m");
  return ((t % m) + m) % m;
}

// inverse of an n x n matrix over Z/p^r; pivots must be units mod p
std::vector<std::vector<long>> invert_mod(const std::vector<std::vector<long>>& M, long p,
                                          long pr) {
  int n = static_cast<int>(M.size());
  auto at = [&](long v) { return ((v % pr) + pr) % pr; };
  std::vector<std::vector<long>> A(M), I(static_cast<size_t>(n), std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    I[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (auto& v : A[static_cast<size_t>(i)]) v = at(v);
  }
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int row = c; row < n; ++row)
      if (A[static_cast<size_t>(row)][static_cast<size_t>(c)] % p != 0) {
        piv = row;
        break;
      }
    if (piv < 0) fail(errc::matrix_not_invertible, "pivot column has no unit entry");
    std::swap(A[static_cast<size_t>(c)], A[static_cast<size_t>(piv)]);
    std::swap(I[static_cast<size_t>(c)], I[static_cast<size_t>(piv)]);
    long inv = mod_inv_l(A[static_cast<size_t>(c)][static_cast<size_t>(c)], pr);
    for (int col = 0; col < n; ++col) {
      A[static_cast<size_t>(c)][static_cast<size_t>(col)] =
          at(A[static_cast<size_t>(c)][static_cast<size_t>(col)] * inv);
      I[static_cast<size_t>(c)][static_cast<size_t>(col)] =
          at(I[static_cast<size_t>(c)][static_cast<size_t>(col)] * inv);
    }
    for (int row = 0; row < n; ++row) {
      if (row == c) continue;
      long f = A[static_cast<size_t>(row)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int col = 0; col < n; ++col) {
        A[static_cast<size_t>(row)][static_cast<size_t>(col)] =
            at(A[static_cast<size_t>(row)][static_cast<size_t>(col)] -
               f * A[static_cast<size_t>(c)][static_cast<size_t>(col)]);
        I[static_cast<size_t>(row)][static_cast<size_t>(col)] =
            at(I[static_cast<size_t>(row)][static_cast<size_t>(col)] -
               f * I[static_cast<size_t>(c)][static_cast<size_t>(col)]);
      }
    }
  }
  return I;
}

std::vector<long> mat_vec(const std::vector<std::vector<long>>& M, const std::vector<long>& v,
                          long pr) {
  int n = static_cast<int>(M.size());
  std::vector<long> r(static_cast<size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    long acc = 0;
    for (int j = 0; j < n; ++j)
      acc = (acc + M[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                       v[static_cast<size_t>(j)]) %
            pr;
    r[static_cast<size_t>(i)] = ((acc % pr) + pr) % pr;
  }
  return r;
}

// tuple image under (g_i) -> (prod_j g_j^{M[j][i]}) with exponents mod pr
std::vector<int> act_tuple(const FiniteGroup& G, const std::vector<int>& t,
                           const std::vector<std::vector<long>>& M, long pr) {
  int n = static_cast<int>(t.size());
  std::vector<int> s(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    int acc = 0;
    for (int j = 0; j < n; ++j) {
      long e = ((M[static_cast<size_t>(j)][static_cast<size_t>(i)] % pr) + pr) % pr;
      acc = G.mul[acc][G.power(t[static_cast<size_t>(j)], e)];
    }
    s[static_cast<size_t>(i)] = acc;
  }
  return s;
}

// each unit's class permutation plus the tuple-level descent assertion
std::vector<std::vector<int>> unit_perms(const HomModel& model, const UnitGroupSample& U) {
  std::vector<std::vector<int>> perms;
  perms.reserve(U.units.size());
  const FiniteGroup& G = *model.group;
  for (size_t u = 0; u < U.units.size(); ++u) {
    auto M = U.mult_matrix(static_cast<int>(u));
    std::vector<int> perm = matrix_action(model.classes, M, model.level_r);
    for (size_t t = 0; t < model.classes.tuples.size(); ++t) {
      std::vector<int> img = act_tuple(G, model.classes.tuples[t], M, model.pr);
      int want = perm[static_cast<size_t>(model.classes.tuple_class[t])];
      if (model.classes.class_of(img) != want)
        fail(errc::internal, "unit action does not descend to classes");
    }
    perms.push_back(std::move(perm));
  }
  return perms;
}

EtaleDecomposition orbits_from_perms(const HomModel& model,
                                     const std::vector<std::vector<int>>& perms,
                                     long acting_order, std::string refinement) {
  EtaleDecomposition out;
  out.field = model.field;
  out.group = model.group;
  out.level_r = model.level_r;
  out.acting_group_order = acting_order;
  out.refinement = std::move(refinement);
  out.total_classes = static_cast<long>(model.classes.classes.size());
  std::vector<bool> seen(model.classes.classes.size(), false);
  for (size_t c = 0; c < model.classes.classes.size(); ++c) {
    if (seen[c]) continue;
    std::set<int> orbit;
    for (const auto& perm : perms) orbit.insert(perm[c]);
    for (int x : orbit) seen[static_cast<size_t>(x)] = true;
    EtalePoint pt;
    pt.class_index = static_cast<int>(c);
    pt.rep = model.classes.classes[c].rep;
    pt.degree = static_cast<long>(orbit.size());
    if (acting_order % pt.degree != 0)
      fail(errc::internal, "orbit size does not divide the acting group order");
    pt.stabilizer_order = acting_order / pt.degree;
    out.points.push_back(std::move(pt));
  }
  return out;
}

std::vector<std::vector<long>> reduce_matrix(const std::vector<std::vector<mpz_class>>& M,
                                             long pr) {
  std::vector<std::vector<long>> R(M.size(), std::vector<long>(M.size()));
  for (size_t i = 0; i < M.size(); ++i)
    for (size_t j = 0; j < M.size(); ++j) {
      mpz_class v = M[i][j] % pr;
      if (v < 0) v += pr;
      R[i][j] = v.get_si();
    }
  return R;
}

}  // namespace

QmodZ qmz(long num, long den) {
  if (den == 0) fail(errc::bad_input, "zero denominator");
  if (den < 0) {
    den = -den;
    num = -num;
  }
  num = ((num % den) + den) % den;
  if (num == 0) return QmodZ{0, 1};
  long g = gcd_l(num, den);
  return QmodZ{num / g, den / g};
}

QmodZ operator+(const QmodZ& a, const QmodZ& b) {
  long den = a.den / gcd_l(a.den, b.den) * b.den;
  return qmz(a.num * (den / a.den) + b.num * (den / b.den), den);
}

QmodZ operator-(const QmodZ& a) { return qmz(-a.num, a.den); }

QmodZ scale(long k, const QmodZ& a) {
  long kk = ((k % a.den) + a.den) % a.den;
  return qmz(kk * a.num, a.den);
}

long qmz_order(const QmodZ& a) { return a.den; }

Character character_from_images(const GroupPtr& G, const std::vector<int>& generators,
                                const std::vector<QmodZ>& images) {
  if (generators.size() != images.size())
    fail(errc::bad_input, "generator and image counts differ");
  for (int g : generators)
    if (g < 0 || g >= G->order) fail(errc::bad_input, "generator index out of range");
  const QmodZ unset{-1, -1};
  std::vector<QmodZ> val(static_cast<size_t>(G->order), unset);
  val[0] = qmz(0, 1);
  std::vector<int> frontier{0};
  for (size_t head = 0; head < frontier.size(); ++head) {
    int x = frontier[static_cast<size_t>(head)];
    for (size_t gi = 0; gi < generators.size(); ++gi) {
      int y = G->mul[x][generators[gi]];
      QmodZ want = val[static_cast<size_t>(x)] + images[gi];
      if (val[static_cast<size_t>(y)] == unset) {
        val[static_cast<size_t>(y)] = want;
        frontier.push_back(y);
      } else if (!(val[static_cast<size_t>(y)] == want)) {
        fail(errc::not_a_character, "generator images are inconsistent");
      }
    }
  }
  if (frontier.size() != static_cast<size_t>(G->order))
    fail(errc::not_a_character, "listed generators do not generate the group");
  for (int a = 0; a < G->order; ++a)
    for (int b = 0; b < G->order; ++b)
      if (!(val[static_cast<size_t>(G->mul[a][b])] ==
            val[static_cast<size_t>(a)] + val[static_cast<size_t>(b)]))
        fail(errc::not_a_character, "images do not extend to a homomorphism");
  return Character{G, std::move(val)};
}

std::vector<Character> all_characters(const GroupPtr& G) {
  Abelianization ab = abelianization(*G);
  const FiniteGroup& A = *ab.quotient;
  if (A.order > 64) fail(errc::cap_exceeded, "abelianization order exceeds 64");

  // greedy generating sequence: maximal order first, least index on ties
  std::vector<int> gens;
  std::vector<bool> in_sub(static_cast<size_t>(A.order), false);
  in_sub[0] = true;
  long covered = 1;
  while (covered < A.order) {
    int best = -1;
    for (int g = 0; g < A.order; ++g)
      if (!in_sub[static_cast<size_t>(g)] &&
          (best < 0 || A.element_order[g] > A.element_order[best]))
        best = g;
    gens.push_back(best);
    // close the subgroup under the new generator
    std::vector<int> sub;
    for (int g = 0; g < A.order; ++g)
      if (in_sub[static_cast<size_t>(g)]) sub.push_back(g);
    for (size_t head = 0; head < sub.size(); ++head) {
      int with_gen = A.mul[sub[head]][best];
      if (!in_sub[static_cast<size_t>(with_gen)]) {
        in_sub[static_cast<size_t>(with_gen)] = true;
        sub.push_back(with_gen);
      }
      for (size_t j = 0; j < sub.size(); ++j) {
        int prod = A.mul[sub[head]][sub[j]];
        if (!in_sub[static_cast<size_t>(prod)]) {
          in_sub[static_cast<size_t>(prod)] = true;
          sub.push_back(prod);
        }
      }
    }
    covered = static_cast<long>(sub.size());
  }

  // candidate images k_i / ord(gen_i), filtered by actual extension
  std::vector<Character> out;
  std::vector<long> k(gens.size(), 0);
  for (;;) {
    std::vector<QmodZ> images;
    images.reserve(gens.size());
    for (size_t i = 0; i < gens.size(); ++i)
      images.push_back(qmz(k[i], A.element_order[gens[i]]));
    bool consistent = true;
    Character chi{ab.quotient, {}};
    try {
      chi = character_from_images(ab.quotient, gens, images);
    } catch (const Error& e) {
      if (e.code() != errc::not_a_character) throw;
      consistent = false;
    }
    if (consistent) {
      // pull back along the projection
      std::vector<QmodZ> lifted(static_cast<size_t>(G->order));
      for (int g = 0; g < G->order; ++g)
        lifted[static_cast<size_t>(g)] =
            chi.values[static_cast<size_t>(ab.projection[static_cast<size_t>(g)])];
      out.push_back(Character{G, std::move(lifted)});
    }
    // odometer over the exponent tuples
    size_t pos = 0;
    while (pos < k.size()) {
      if (++k[pos] < A.element_order[gens[pos]]) break;
      k[pos] = 0;
      ++pos;
    }
    if (pos == k.size()) break;
  }
  if (static_cast<long>(out.size()) != A.order)
    fail(errc::internal, "character count differs from the abelianization order");
  return out;
}

HomModel hom_model(const FieldPtr& field, const GroupPtr& G, long budget) {
  HomModel m;
  m.field = field;
  m.group = G;
  long max_order = 1;
  for (int g : p_elements(*G, field->p))
    max_order = std::max(max_order, static_cast<long>(G->element_order[g]));
  m.level_r = 1;
  m.pr = field->p;
  while (m.pr < max_order) {
    m.pr *= field->p;
    ++m.level_r;
  }
  m.classes = tuple_classes(G, field->n, field->p, budget);
  return m;
}

EtaleDecomposition unit_orbits(const FieldPtr& field, const GroupPtr& G, long budget,
                               long unit_cap) {
  HomModel model = hom_model(field, G, budget);
  UnitGroupSample U = unit_group(field, model.level_r, unit_cap);
  auto perms = unit_perms(model, U);
  return orbits_from_perms(model, perms, static_cast<long>(U.units.size()), "none");
}

EtaleDecomposition frobenius_orbits(const FieldPtr& field, const GroupPtr& G, long budget,
                                    long unit_cap) {
  if (field->e != 1) fail(errc::ramified_unsupported, "Frobenius refinement needs e = 1");
  HomModel model = hom_model(field, G, budget);
  UnitGroupSample U = unit_group(field, model.level_r, unit_cap);
  FrobeniusMap sigma = frobenius_lift(field);

  // matrix group generated by the unit multiplications and sigma, mod p^r
  std::map<std::vector<long>, int> index;
  std::vector<std::vector<std::vector<long>>> mats;
  auto flat = [&](const std::vector<std::vector<long>>& M) {
    std::vector<long> f;
    for (const auto& row : M) f.insert(f.end(), row.begin(), row.end());
    return f;
  };
  auto push = [&](const std::vector<std::vector<long>>& M) {
    if (index.emplace(flat(M), static_cast<int>(mats.size())).second) mats.push_back(M);
  };
  std::vector<std::vector<std::vector<long>>> gens;
  for (size_t u = 0; u < U.units.size(); ++u) gens.push_back(U.mult_matrix(static_cast<int>(u)));
  gens.push_back(reduce_matrix(sigma.matrix, model.pr));
  int n = field->n;
  std::vector<std::vector<long>> id(static_cast<size_t>(n), std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
  push(id);
  for (size_t head = 0; head < mats.size(); ++head) {
    for (const auto& g : gens) {
      std::vector<std::vector<long>> prod(static_cast<size_t>(n), std::vector<long>(n, 0));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          long acc = 0;
          for (int t = 0; t < n; ++t)
            acc = (acc + mats[head][static_cast<size_t>(i)][static_cast<size_t>(t)] *
                             g[static_cast<size_t>(t)][static_cast<size_t>(j)]) %
                  model.pr;
          prod[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
        }
      push(prod);
      if (static_cast<long>(mats.size()) > unit_cap)
        fail(errc::cap_exceeded, "acting matrix group exceeds the cap");
    }
  }
  std::vector<std::vector<int>> perms;
  perms.reserve(mats.size());
  for (const auto& M : mats) perms.push_back(matrix_action(model.classes, M, model.level_r));
  return orbits_from_perms(model, perms, static_cast<long>(mats.size()), "frobenius");
}

long rank(const FieldPtr& field, const GroupPtr& G, long budget) {
  return static_cast<long>(hom_classes(field, G, budget).classes.size());
}

CheckReport product_check(const FieldPtr& field, const GroupPtr& G0, const GroupPtr& G1,
                          long budget, long unit_cap) {
  GroupPtr P = make_product(G0, G1);
  EtaleDecomposition whole = unit_orbits(field, P, budget, unit_cap);

  TupleClassSet S0 = tuple_classes(G0, field->n, field->p, budget);
  TupleClassSet S1 = tuple_classes(G1, field->n, field->p, budget);
  long pairs = static_cast<long>(S0.classes.size()) * static_cast<long>(S1.classes.size());
  if (pairs != whole.total_classes)
    return CheckReport::bad("product_check", 0, 0,
                            "class count of the product differs from the pair count");

  UnitGroupSample U = unit_group(field, whole.level_r, unit_cap);
  std::vector<std::vector<int>> p0, p1;
  for (size_t u = 0; u < U.units.size(); ++u) {
    auto M = U.mult_matrix(static_cast<int>(u));
    p0.push_back(matrix_action(S0, M, whole.level_r));
    p1.push_back(matrix_action(S1, M, whole.level_r));
  }
  long m1 = static_cast<long>(S1.classes.size());
  std::vector<bool> seen(static_cast<size_t>(pairs), false);
  std::vector<long> diag_sizes;
  for (long c = 0; c < pairs; ++c) {
    if (seen[static_cast<size_t>(c)]) continue;
    std::set<long> orbit;
    for (size_t u = 0; u < p0.size(); ++u) {
      long c0 = c / m1, c1 = c % m1;
      orbit.insert(static_cast<long>(p0[u][static_cast<size_t>(c0)]) * m1 +
                   p1[u][static_cast<size_t>(c1)]);
    }
    for (long x : orbit) seen[static_cast<size_t>(x)] = true;
    diag_sizes.push_back(static_cast<long>(orbit.size()));
  }
  std::vector<long> whole_sizes;
  for (const auto& pt : whole.points) whole_sizes.push_back(pt.degree);
  std::sort(diag_sizes.begin(), diag_sizes.end());
  std::sort(whole_sizes.begin(), whole_sizes.end());
  if (diag_sizes != whole_sizes)
    return CheckReport::bad("product_check", 0, 0,
                            "orbit size multisets of product and diagonal action differ");
  return CheckReport::ok("product_check", 0,
                         "points " + std::to_string(whole.points.size()));
}

CyclicHomCount cyclic_hom_count(const FieldPtr& field, int nu, long budget) {
  if (nu < 1) fail(errc::bad_input, "nu must be at least 1");
  long pnu = 1;
  for (int i = 0; i < nu; ++i) {
    pnu *= field->p;
    if (pnu > closure_cap) fail(errc::budget_exceeded, "p^nu exceeds the group cap");
  }
  GroupPtr Z = make_cyclic(static_cast<int>(pnu));
  CyclicHomCount out;
  out.count = static_cast<long>(commuting_tuples(*Z, field->n, field->p, budget).size());
  out.expected = 1;
  for (int i = 0; i < field->n; ++i) out.expected *= pnu;
  out.report = (out.count == out.expected)
                   ? CheckReport::ok("cyclic_hom_count", 0,
                                     "count " + std::to_string(out.count))
                   : CheckReport::bad("cyclic_hom_count", 0, 0,
                                      "count " + std::to_string(out.count) + " != p^(nu n) = " +
                                          std::to_string(out.expected));
  return out;
}

std::vector<std::vector<QmodZ>> character_pullback(const Character& lambda,
                                                   const TupleClassSet& S) {
  const FiniteGroup& G = *lambda.group;
  if (S.group.get() != lambda.group.get())
    fail(errc::bad_input, "character and class set belong to different groups");
  for (int g = 0; g < G.order; ++g)
    for (int x = 0; x < G.order; ++x)
      if (!(lambda.values[static_cast<size_t>(G.conj(g, x))] ==
            lambda.values[static_cast<size_t>(x)]))
        fail(errc::internal, "character is not conjugation invariant");
  std::vector<std::vector<QmodZ>> out;
  out.reserve(S.classes.size());
  for (const auto& cls : S.classes) {
    std::vector<QmodZ> row;
    row.reserve(cls.rep.size());
    for (int g : cls.rep) row.push_back(lambda.values[static_cast<size_t>(g)]);
    out.push_back(std::move(row));
  }
  return out;
}

CheckReport equivariance_check(const FieldPtr& field, const Character& lambda, long budget,
                               long unit_cap) {
  if (field->e != 1)
    fail(errc::ramified_unsupported, "trace identification needs an unramified field");
  HomModel model = hom_model(field, lambda.group, budget);
  UnitGroupSample U = unit_group(field, model.level_r, unit_cap);
  long pr = model.pr;
  auto T = reduce_matrix(trace_pairing_matrix(field, model.level_r), pr);
  auto Tinv = invert_mod(T, field->p, pr);

  const FiniteGroup& G = *lambda.group;
  auto torsion_coords = [&](const std::vector<int>& tuple) {
    std::vector<long> a(tuple.size());
    for (size_t i = 0; i < tuple.size(); ++i) {
      const QmodZ& v = lambda.values[static_cast<size_t>(tuple[i])];
      if (pr % v.den != 0)
        fail(errc::internal, "character value falls outside the level's torsion");
      a[i] = v.num * (pr / v.den) % pr;
    }
    return mat_vec(Tinv, a, pr);
  };

  for (size_t c = 0; c < model.classes.classes.size(); ++c) {
    const auto& rep = model.classes.classes[c].rep;
    std::vector<long> t = torsion_coords(rep);
    for (size_t u = 0; u < U.units.size(); ++u) {
      auto M = U.mult_matrix(static_cast<int>(u));
      std::vector<long> lhs = torsion_coords(act_tuple(G, rep, M, pr));
      std::vector<long> rhs = mat_vec(M, t, pr);
      if (lhs != rhs)
        return CheckReport::bad("equivariance", 0, static_cast<long>(c),
                                "f(alpha.phi) != alpha.f(phi) at unit " + std::to_string(u));
    }
  }
  return CheckReport::ok("equivariance", 0,
                         "classes " + std::to_string(model.classes.classes.size()) +
                             ", units " + std::to_string(U.units.size()));
}

}  // namespace lf
