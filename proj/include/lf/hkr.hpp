#pragma once

#include <string>
#include <vector>

#include "lf/finite_group.hpp"
#include "lf/local_field.hpp"
#include "lf/report.hpp"

namespace lf {

// torsion circle Q/Z, kept as a reduced fraction with 0 <= num < den
struct QmodZ {
  long num = 0;
  long den = 1;

  bool operator==(const QmodZ& o) const { return num == o.num && den == o.den; }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }
};

QmodZ qmz(long num, long den);
QmodZ operator+(const QmodZ& a, const QmodZ& b);
QmodZ operator-(const QmodZ& a);
QmodZ scale(long k, const QmodZ& a);
long qmz_order(const QmodZ& a);  // additive order = denominator

// a homomorphism G -> Q/Z tabulated on every element
struct Character {
  GroupPtr group;
  std::vector<QmodZ> values;
};

// extends generator images to the whole group; the result is checked to be a
// homomorphism on all pairs
Character character_from_images(const GroupPtr& G, const std::vector<int>& generators,
                                const std::vector<QmodZ>& images);

// every character of G (all factor through the abelianization, which must
// have order <= 64); deterministic order
std::vector<Character> all_characters(const GroupPtr& G);

// Hom(o_L, G)/conj modeled as tuple classes on the tower basis, with the
// finite level the unit action factors through
struct HomModel {
  FieldPtr field;
  GroupPtr group;
  int level_r = 1;
  long pr = 1;  // p^level_r
  TupleClassSet classes;
};

HomModel hom_model(const FieldPtr& field, const GroupPtr& G,
                   long budget = default_tuple_budget);

inline TupleClassSet hom_classes(const FieldPtr& field, const GroupPtr& G,
                                 long budget = default_tuple_budget) {
  return hom_model(field, G, budget).classes;
}

// one closed point of the character scheme: a Galois orbit of classes
struct EtalePoint {
  int class_index = 0;        // least class index in the orbit
  std::vector<int> rep;       // that class's representative tuple
  long degree = 0;            // orbit size
  long stabilizer_order = 0;  // acting_group_order / degree
};

struct EtaleDecomposition {
  FieldPtr field;
  GroupPtr group;
  int level_r = 1;
  long acting_group_order = 1;
  std::string refinement;  // "none" | "frobenius"
  std::vector<EtalePoint> points;
  long total_classes = 0;
};

// orbits of the unit-group action a.(g_i) = prod_j g_j^{c_ji}, where c is the
// multiplication matrix of the unit on the tower basis mod p^r; the descent
// of the action to classes is verified on every tuple
EtaleDecomposition unit_orbits(const FieldPtr& field, const GroupPtr& G,
                               long budget = default_tuple_budget,
                               long unit_cap = 1000000);

// refinement by the lifted residue Frobenius; unramified fields only
EtaleDecomposition frobenius_orbits(const FieldPtr& field, const GroupPtr& G,
                                    long budget = default_tuple_budget,
                                    long unit_cap = 1000000);

// number of closed points counted with degree, i.e. |Hom(o_L, G)/conj|
long rank(const FieldPtr& field, const GroupPtr& G, long budget = default_tuple_budget);

// compares the decomposition of G0 x G1 with the diagonal unit action on
// pairs of classes: total count and orbit-size multiset must agree
CheckReport product_check(const FieldPtr& field, const GroupPtr& G0, const GroupPtr& G1,
                          long budget = default_tuple_budget, long unit_cap = 1000000);

// |Hom(o_L, Z/p^nu)| enumerated through the tuple model, checked against
// p^(nu n) = |p^nu-torsion of L/o_L|
struct CyclicHomCount {
  long count = 0;
  long expected = 0;
  CheckReport report;
};
CyclicHomCount cyclic_hom_count(const FieldPtr& field, int nu,
                                long budget = default_tuple_budget);

// the section C_L G -> (Q/Z)^n attached to a character: class -> (lambda(g_i));
// conjugation invariance of lambda is asserted first
std::vector<std::vector<QmodZ>> character_pullback(const Character& lambda,
                                                   const TupleClassSet& S);

// f_lambda(alpha.phi) = alpha.f_lambda(phi): both sides computed in L/o_L
// coordinates through the inverse trace matrix, for every unit and class
CheckReport equivariance_check(const FieldPtr& field, const Character& lambda,
                               long budget = default_tuple_budget,
                               long unit_cap = 1000000);

}  // namespace lf
