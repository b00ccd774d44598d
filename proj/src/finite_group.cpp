#include "lf/finite_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace lf {
namespace {

// orders and inverses from a validated table
void finish_tables(FiniteGroup& G) {
  int m = G.order;
  G.inv.assign(m, -1);
  G.element_order.assign(m, 0);
  for (int g = 0; g < m; ++g) {
    for (int h = 0; h < m; ++h)
      if (G.mul[g][h] == 0 && G.mul[h][g] == 0) {
        G.inv[g] = h;
        break;
      }
    if (G.inv[g] < 0) fail(errc::no_inverse, "element " + std::to_string(g) + " has no inverse");
    int x = g, ord = 1;
    while (x != 0) {
      x = G.mul[x][g];
      ++ord;
      if (ord > m) fail(errc::internal, "element order exceeds the group order");
    }
    G.element_order[g] = ord;
  }
}

void check_associative(const FiniteGroup& G) {
  int m = G.order;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (G.mul[G.mul[a][b]][c] != G.mul[a][G.mul[b][c]])
          fail(errc::not_associative, "table is not associative at (" + std::to_string(a) + "," +
                                          std::to_string(b) + "," + std::to_string(c) + ")");
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];  // apply b, then a
  return r;
}

}  // namespace

int FiniteGroup::power(int g, long e) const {
  int r = 0;
  int base = g;
  while (e > 0) {
    if (e & 1) r = mul[r][base];
    base = mul[base][base];
    e >>= 1;
  }
  return r;
}

GroupPtr group_from_table(std::string name, const std::vector<std::vector<int>>& table,
                          bool trusted) {
  int m = static_cast<int>(table.size());
  if (m < 1 || m > closure_cap) fail(errc::bad_input, "table order outside [1, closure cap]");
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != m) fail(errc::bad_input, "table is not square");
    for (int v : row)
      if (v < 0 || v >= m) fail(errc::bad_input, "table entry out of range");
  }
  int e = -1;
  for (int cand = 0; cand < m && e < 0; ++cand) {
    bool ok = true;
    for (int g = 0; g < m && ok; ++g)
      ok = table[cand][g] == g && table[g][cand] == g;
    if (ok) e = cand;
  }
  if (e < 0) fail(errc::no_identity, "table has no two-sided identity");

  auto G = std::make_shared<FiniteGroup>();
  G->name = std::move(name);
  G->order = m;
  if (e == 0) {
    G->mul = table;
  } else {
    // relabel by swapping the identity to index 0
    std::vector<int> to_new(m);
    std::iota(to_new.begin(), to_new.end(), 0);
    std::swap(to_new[0], to_new[e]);
    G->mul.assign(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) G->mul[to_new[a]][to_new[b]] = to_new[table[a][b]];
  }
  if (m <= 200 || !trusted) check_associative(*G);
  finish_tables(*G);
  return G;
}

GroupPtr group_from_perms(std::string name, int degree,
                          const std::vector<std::vector<int>>& generators) {
  if (degree < 1) fail(errc::bad_input, "permutation degree must be positive");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != degree) fail(errc::bad_input, "generator length != degree");
    std::vector<bool> seen(static_cast<size_t>(degree), false);
    for (int v : g) {
      if (v < 0 || v >= degree || seen[static_cast<size_t>(v)])
        fail(errc::bad_input, "generator is not a permutation");
      seen[static_cast<size_t>(v)] = true;
    }
  }
  std::vector<int> id(static_cast<size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> index{{id, 0}};
  for (size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : generators) {
      std::vector<int> next = compose_perm(elems[head], g);
      if (index.emplace(next, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(next));
        if (static_cast<int>(elems.size()) > closure_cap)
          fail(errc::closure_cap_exceeded, "closure exceeds the cap");
      }
    }
  }
  int m = static_cast<int>(elems.size());
  auto G = std::make_shared<FiniteGroup>();
  G->name = std::move(name);
  G->order = m;
  G->mul.assign(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) G->mul[a][b] = index.at(compose_perm(elems[a], elems[b]));
  for (const auto& g : generators) G->generator_indices.push_back(index.at(g));
  finish_tables(*G);
  return G;
}

GroupPtr make_cyclic(int m) {
  if (m < 1 || m > closure_cap) fail(errc::bad_input, "cyclic order outside [1, closure cap]");
  auto G = std::make_shared<FiniteGroup>();
  G->name = "Z" + std::to_string(m);
  G->order = m;
  G->mul.assign(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) G->mul[a][b] = (a + b) % m;
  if (m > 1) G->generator_indices.push_back(1);
  finish_tables(*G);
  return G;
}

GroupPtr make_product(const GroupPtr& a, const GroupPtr& b) {
  long m = static_cast<long>(a->order) * b->order;
  if (m > closure_cap) fail(errc::closure_cap_exceeded, "product order exceeds the cap");
  auto G = std::make_shared<FiniteGroup>();
  G->name = a->name + "x" + b->name;
  G->order = static_cast<int>(m);
  G->mul.assign(G->order, std::vector<int>(G->order));
  for (int g = 0; g < a->order; ++g)
    for (int h = 0; h < b->order; ++h)
      for (int g2 = 0; g2 < a->order; ++g2)
        for (int h2 = 0; h2 < b->order; ++h2)
          G->mul[g * b->order + h][g2 * b->order + h2] =
              a->mul[g][g2] * b->order + b->mul[h][h2];
  finish_tables(*G);
  return G;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& G) {
  ConjugacyClasses out;
  out.class_of.assign(static_cast<size_t>(G.order), -1);
  for (int x = 0; x < G.order; ++x) {
    if (out.class_of[static_cast<size_t>(x)] >= 0) continue;
    int idx = static_cast<int>(out.classes.size());
    std::vector<int> cls;
    for (int g = 0; g < G.order; ++g) {
      int y = G.conj(g, x);
      if (out.class_of[static_cast<size_t>(y)] < 0) {
        out.class_of[static_cast<size_t>(y)] = idx;
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

std::vector<int> p_elements(const FiniteGroup& G, long p) {
  std::vector<int> out;
  for (int g = 0; g < G.order; ++g) {
    int o = G.element_order[g];
    while (o % p == 0) o = static_cast<int>(o / p);
    if (o == 1) out.push_back(g);
  }
  return out;
}

std::vector<int> centralizer(const FiniteGroup& G, int g) {
  std::vector<int> out;
  for (int h = 0; h < G.order; ++h)
    if (G.mul[g][h] == G.mul[h][g]) out.push_back(h);
  return out;
}

Subgroup subgroup_from(const FiniteGroup& G, const std::vector<int>& elems) {
  Subgroup out;
  out.to_parent = elems;
  std::sort(out.to_parent.begin(), out.to_parent.end());
  out.from_parent.assign(static_cast<size_t>(G.order), -1);
  int m = static_cast<int>(out.to_parent.size());
  for (int i = 0; i < m; ++i) out.from_parent[static_cast<size_t>(out.to_parent[i])] = i;
  if (out.to_parent.empty() || out.to_parent[0] != 0)
    fail(errc::bad_input, "subgroup must contain the identity");
  auto H = std::make_shared<FiniteGroup>();
  H->name = G.name + "_sub" + std::to_string(m);
  H->order = m;
  H->mul.assign(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int prod = G.mul[out.to_parent[i]][out.to_parent[j]];
      int k = out.from_parent[static_cast<size_t>(prod)];
      if (k < 0) fail(errc::bad_input, "subset is not closed under the table");
      H->mul[i][j] = k;
    }
  finish_tables(*H);
  out.group = std::move(H);
  return out;
}

namespace {

void extend_tuples(const FiniteGroup& G, int n, const std::vector<int>& pool,
                   std::vector<int>& tuple, std::vector<std::vector<int>>& out, long& visits,
                   long budget) {
  if (static_cast<int>(tuple.size()) == n) {
    out.push_back(tuple);
    return;
  }
  for (int cand : pool) {
    if (++visits > budget) fail(errc::budget_exceeded, "tuple enumeration budget exhausted");
    tuple.push_back(cand);
    // shrink the pool to the centralizer of the new entry
    std::vector<int> next;
    next.reserve(pool.size());
    for (int h : pool)
      if (G.mul[cand][h] == G.mul[h][cand]) next.push_back(h);
    extend_tuples(G, n, next, tuple, out, visits, budget);
    tuple.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> commuting_tuples(const FiniteGroup& G, int n, long p, long budget) {
  if (n < 0) fail(errc::bad_input, "tuple length must be nonnegative");
  std::vector<std::vector<int>> out;
  std::vector<int> tuple;
  long visits = 0;
  extend_tuples(G, n, p_elements(G, p), tuple, out, visits, budget);
  return out;
}

int TupleClassSet::class_of(const std::vector<int>& tuple) const {
  auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple);
  if (it == tuples.end() || *it != tuple) return -1;
  return tuple_class[static_cast<size_t>(it - tuples.begin())];
}

TupleClassSet tuple_classes(const GroupPtr& G, int n, long p, long budget) {
  TupleClassSet S;
  S.group = G;
  S.n = n;
  S.p = p;
  S.tuples = commuting_tuples(*G, n, p, budget);
  S.total_tuples = static_cast<long>(S.tuples.size());
  S.tuple_class.assign(S.tuples.size(), -1);
  std::vector<int> image(static_cast<size_t>(n));
  for (size_t t = 0; t < S.tuples.size(); ++t) {
    if (S.tuple_class[t] >= 0) continue;
    int idx = static_cast<int>(S.classes.size());
    long size = 0;
    for (int g = 0; g < G->order; ++g) {
      for (int i = 0; i < n; ++i) image[static_cast<size_t>(i)] = G->conj(g, S.tuples[t][static_cast<size_t>(i)]);
      auto it = std::lower_bound(S.tuples.begin(), S.tuples.end(), image);
      size_t j = static_cast<size_t>(it - S.tuples.begin());
      if (it == S.tuples.end() || *it != image)
        fail(errc::internal, "conjugate of a commuting tuple is missing from the list");
      if (S.tuple_class[j] < 0) {
        S.tuple_class[j] = idx;
        ++size;
      }
    }
    // the sweep order makes the first member the lexicographic minimum
    S.classes.push_back({S.tuples[t], size});
  }
  return S;
}

long centralizer_count_oracle(const FiniteGroup& G, int n, long p, long budget) {
  if (n == 0) return 1;
  ConjugacyClasses cc = conjugacy_classes(G);
  long total = 0;
  for (const auto& cls : cc.classes) {
    int g = cls[0];
    int o = G.element_order[g];
    while (o % p == 0) o = static_cast<int>(o / p);
    if (o != 1) continue;
    Subgroup C = subgroup_from(G, centralizer(G, g));
    total += centralizer_count_oracle(*C.group, n - 1, p, budget);
  }
  return total;
}

long burnside_class_count(const FiniteGroup& G, int n, long p, long budget) {
  auto tuples = commuting_tuples(G, n, p, budget);
  long fixed_total = 0;
  for (int g = 0; g < G.order; ++g)
    for (const auto& t : tuples) {
      bool fixed = true;
      for (int x : t)
        if (G.conj(g, x) != x) {
          fixed = false;
          break;
        }
      if (fixed) ++fixed_total;
    }
  if (fixed_total % G.order != 0)
    fail(errc::internal, "fixed-point total is not divisible by the group order");
  return fixed_total / G.order;
}

std::vector<int> matrix_action(const TupleClassSet& S, const std::vector<std::vector<long>>& M,
                               int r) {
  int n = S.n;
  if (static_cast<int>(M.size()) != n) fail(errc::bad_input, "matrix size != tuple length");
  for (const auto& row : M)
    if (static_cast<int>(row.size()) != n) fail(errc::bad_input, "matrix is not square");
  long pr = 1;
  for (int i = 0; i < r; ++i) pr *= S.p;
  // invertibility mod p^r reduces to the determinant being a unit mod p
  {
    auto at = [&](long v) { return ((v % S.p) + S.p) % S.p; };
    std::vector<std::vector<long>> A(static_cast<size_t>(n), std::vector<long>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] = at(M[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    for (int c = 0; c < n; ++c) {
      int piv = -1;
      for (int row = c; row < n; ++row)
        if (A[static_cast<size_t>(row)][static_cast<size_t>(c)] != 0) {
          piv = row;
          break;
        }
      if (piv < 0) fail(errc::matrix_not_invertible, "matrix determinant is divisible by p");
      std::swap(A[static_cast<size_t>(c)], A[static_cast<size_t>(piv)]);
      long d = A[static_cast<size_t>(c)][static_cast<size_t>(c)];
      long dinv = 1;
      while (at(d * dinv) != 1) ++dinv;
      for (int row = c + 1; row < n; ++row) {
        long factor = at(A[static_cast<size_t>(row)][static_cast<size_t>(c)] * dinv);
        for (int col = 0; col < n; ++col)
          A[static_cast<size_t>(row)][static_cast<size_t>(col)] =
              at(A[static_cast<size_t>(row)][static_cast<size_t>(col)] -
                 factor * A[static_cast<size_t>(c)][static_cast<size_t>(col)]);
      }
    }
  }
  const FiniteGroup& G = *S.group;
  std::vector<int> perm(S.classes.size(), -1);
  std::vector<int> image(static_cast<size_t>(n));
  for (size_t c = 0; c < S.classes.size(); ++c) {
    const auto& rep = S.classes[c].rep;
    for (int i = 0; i < n; ++i) {
      int acc = 0;
      for (int j = 0; j < n; ++j) {
        long e = ((M[static_cast<size_t>(j)][static_cast<size_t>(i)] % pr) + pr) % pr;
        acc = G.mul[acc][G.power(rep[static_cast<size_t>(j)], e)];
      }
      image[static_cast<size_t>(i)] = acc;
    }
    int target = S.class_of(image);
    if (target < 0) fail(errc::internal, "matrix action left the commuting tuple set");
    perm[c] = target;
  }
  std::vector<bool> hit(perm.size(), false);
  for (int t : perm) {
    if (hit[static_cast<size_t>(t)])
      fail(errc::internal, "matrix action is not a bijection on classes");
    hit[static_cast<size_t>(t)] = true;
  }
  return perm;
}

Abelianization abelianization(const FiniteGroup& G) {
  // commutator closure
  std::vector<bool> in(static_cast<size_t>(G.order), false);
  std::vector<int> K;
  auto add = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = true;
      K.push_back(x);
    }
  };
  add(0);
  for (int a = 0; a < G.order; ++a)
    for (int b = 0; b < G.order; ++b)
      add(G.mul[G.mul[a][b]][G.inv[G.mul[b][a]]]);  // [a,b] = ab (ba)^-1
  for (size_t head = 0; head < K.size(); ++head)
    for (size_t j = 0; j < K.size(); ++j) {
      add(G.mul[K[head]][K[j]]);
      if (K.size() > static_cast<size_t>(G.order)) fail(errc::internal, "closure overflow");
    }

  // left cosets gK; quotient elements numbered by their least member
  std::vector<int> coset_min(static_cast<size_t>(G.order), -1);
  std::vector<int> least;
  for (int g = 0; g < G.order; ++g) {
    if (coset_min[static_cast<size_t>(g)] >= 0) continue;
    for (int k : K) coset_min[static_cast<size_t>(G.mul[g][k])] = g;
    least.push_back(g);
  }
  std::sort(least.begin(), least.end());
  std::vector<int> index_of(static_cast<size_t>(G.order), -1);
  for (size_t i = 0; i < least.size(); ++i) index_of[static_cast<size_t>(least[i])] = static_cast<int>(i);

  Abelianization out;
  out.projection.assign(static_cast<size_t>(G.order), -1);
  for (int g = 0; g < G.order; ++g)
    out.projection[static_cast<size_t>(g)] = index_of[static_cast<size_t>(coset_min[static_cast<size_t>(g)])];
  int m = static_cast<int>(least.size());
  auto Q = std::make_shared<FiniteGroup>();
  Q->name = G.name + "_ab";
  Q->order = m;
  Q->mul.assign(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      Q->mul[i][j] = out.projection[static_cast<size_t>(G.mul[least[static_cast<size_t>(i)]][least[static_cast<size_t>(j)]])];
  finish_tables(*Q);
  if (!is_abelian(*Q)) fail(errc::internal, "abelianization is not abelian");
  out.quotient = std::move(Q);
  return out;
}

bool is_abelian(const FiniteGroup& G) {
  for (int a = 0; a < G.order; ++a)
    for (int b = a + 1; b < G.order; ++b)
      if (G.mul[a][b] != G.mul[b][a]) return false;
  return true;
}

}  // namespace lf
