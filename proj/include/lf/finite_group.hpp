#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lf/errors.hpp"

namespace lf {

// Finite group on dense indices 0..order-1 with 0 the identity.  mul is the
// full Cayley table; element_order[g] divides the order.
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> mul;
  std::vector<int> inv;
  std::vector<int> element_order;
  std::vector<int> generator_indices;  // set for permutation groups, else empty

  int conj(int g, int x) const { return mul[mul[g][x]][inv[g]]; }  // g x g^-1
  int power(int g, long e) const;                                  // e >= 0
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline constexpr int closure_cap = 5000;
inline constexpr long default_tuple_budget = 10000000;

// validates a Cayley table: two-sided identity (relabeled to index 0 when it
// sits elsewhere), two-sided inverses, associativity.  Associativity is
// O(order^3) and is only skipped above order 200 when trusted is set.
GroupPtr group_from_table(std::string name, const std::vector<std::vector<int>>& table,
                          bool trusted = false);

// breadth-first closure of permutation generators; elements are numbered in
// discovery order starting from the identity, successors taken by right
// multiplication through the generator list
GroupPtr group_from_perms(std::string name, int degree,
                          const std::vector<std::vector<int>>& generators);

GroupPtr make_cyclic(int m);
GroupPtr make_product(const GroupPtr& a, const GroupPtr& b);  // (g,h) -> g*|b| + h

struct ConjugacyClasses {
  std::vector<std::vector<int>> classes;  // each ascending; ordered by least element
  std::vector<int> class_of;              // element -> class index
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& G);

// elements of p-power order, ascending (identity included)
std::vector<int> p_elements(const FiniteGroup& G, long p);

std::vector<int> centralizer(const FiniteGroup& G, int g);

// group induced on a subset closed under the table; index map is ascending
struct Subgroup {
  GroupPtr group;
  std::vector<int> from_parent;  // parent index -> subgroup index, -1 outside
  std::vector<int> to_parent;
};
Subgroup subgroup_from(const FiniteGroup& G, const std::vector<int>& elems);

// all ordered pairwise-commuting n-tuples of p-power-order elements in
// lexicographic order; prunes by intersecting centralizers left to right and
// counts candidate visits against the budget
std::vector<std::vector<int>> commuting_tuples(const FiniteGroup& G, int n, long p,
                                               long budget = default_tuple_budget);

// orbits of simultaneous conjugation on commuting tuples
struct TupleClassSet {
  GroupPtr group;
  int n = 0;
  long p = 0;
  struct Orbit {
    std::vector<int> rep;  // lexicographically minimal member
    long size = 0;
  };
  std::vector<Orbit> classes;
  long total_tuples = 0;
  // the full tuple list (lexicographic) with each tuple's class index
  std::vector<std::vector<int>> tuples;
  std::vector<int> tuple_class;

  int class_of(const std::vector<int>& tuple) const;  // -1 when absent
};

TupleClassSet tuple_classes(const GroupPtr& G, int n, long p,
                            long budget = default_tuple_budget);

// class count by the recursion over p-power classes [g] of centralizer
// counts at n-1; an independent path that never enumerates orbits
long centralizer_count_oracle(const FiniteGroup& G, int n, long p,
                              long budget = default_tuple_budget);

// class count as the average number of conjugation-fixed tuples
long burnside_class_count(const FiniteGroup& G, int n, long p,
                          long budget = default_tuple_budget);

// (t_i) -> (prod_j t_j^{M[j][i]}) on classes; M must be invertible mod p
// and exponents are read mod p^r
std::vector<int> matrix_action(const TupleClassSet& S, const std::vector<std::vector<long>>& M,
                               int r);

struct Abelianization {
  GroupPtr quotient;
  std::vector<int> projection;  // parent element -> quotient element
};
Abelianization abelianization(const FiniteGroup& G);

bool is_abelian(const FiniteGroup& G);

}  // namespace lf
