#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "lf/finite_group.hpp"
#include "lf/json_io.hpp"

using namespace lf;

namespace {

GroupPtr corpus_group(const std::string& name) {
  return group_from_json(load_json_file(std::string(LF_CORPUS_DIR) + "/" + name + ".json"));
}

GroupPtr sym3() { return group_from_perms("S3", 3, {{1, 0, 2}, {1, 2, 0}}); }

}  // namespace

TEST_CASE("permutation closure produces the symmetric group") {
  GroupPtr G = sym3();
  CHECK(G->order == 6);
  CHECK(!is_abelian(*G));
  std::multiset<int> orders(G->element_order.begin(), G->element_order.end());
  CHECK(orders == std::multiset<int>{1, 2, 2, 2, 3, 3});
  CHECK(G->generator_indices.size() == 2);
}

TEST_CASE("conjugacy classes partition the group") {
  for (const char* name : {"s3", "s4", "a4", "d4", "q8", "z6"}) {
    GroupPtr G = corpus_group(name);
    ConjugacyClasses cc = conjugacy_classes(*G);
    size_t total = 0;
    for (const auto& cls : cc.classes) total += cls.size();
    CHECK(total == static_cast<size_t>(G->order));
    for (int g = 0; g < G->order; ++g) {
      int c = cc.class_of[static_cast<size_t>(g)];
      const auto& cls = cc.classes[static_cast<size_t>(c)];
      CHECK(std::find(cls.begin(), cls.end(), g) != cls.end());
      // class size divides the order
      CHECK(G->order % static_cast<long>(cls.size()) == 0);
    }
  }
}

TEST_CASE("known class counts") {
  CHECK(conjugacy_classes(*corpus_group("s3")).classes.size() == 3);
  CHECK(conjugacy_classes(*corpus_group("s4")).classes.size() == 5);
  CHECK(conjugacy_classes(*corpus_group("a4")).classes.size() == 4);
  CHECK(conjugacy_classes(*corpus_group("d4")).classes.size() == 5);
  CHECK(conjugacy_classes(*corpus_group("q8")).classes.size() == 5);
  CHECK(conjugacy_classes(*corpus_group("z6")).classes.size() == 6);
}

TEST_CASE("table validation rejects a corrupted cayley table") {
  json j = load_json_file(std::string(LF_TEST_DATA_DIR) + "/bad_q8.json");
  CHECK_THROWS_AS(group_from_json(j), Error);
  try {
    group_from_json(j);
  } catch (const Error& e) {
    CHECK(e.code() == errc::not_associative);
  }
}

TEST_CASE("cyclic and product constructions") {
  GroupPtr z6 = make_cyclic(6);
  CHECK(z6->order == 6);
  CHECK(is_abelian(*z6));
  GroupPtr z2 = make_cyclic(2);
  GroupPtr z3 = make_cyclic(3);
  GroupPtr prod = make_product(z2, z3);
  CHECK(prod->order == 6);
  CHECK(is_abelian(*prod));
  // z2 x z3 is cyclic of order 6: some element has order 6
  CHECK(*std::max_element(prod->element_order.begin(), prod->element_order.end()) == 6);
}

TEST_CASE("p-elements are those of p-power order") {
  GroupPtr G = corpus_group("s3");
  CHECK(p_elements(*G, 2).size() == 4);  // identity and three transpositions
  CHECK(p_elements(*G, 3).size() == 3);  // identity and both 3-cycles
  GroupPtr q8 = corpus_group("q8");
  CHECK(p_elements(*q8, 2).size() == 8);
  CHECK(p_elements(*q8, 3).size() == 1);
}

TEST_CASE("centralizer sizes satisfy the orbit-stabilizer identity") {
  GroupPtr G = corpus_group("s4");
  ConjugacyClasses cc = conjugacy_classes(*G);
  for (const auto& cls : cc.classes) {
    long cent = static_cast<long>(centralizer(*G, cls[0]).size());
    CHECK(cent * static_cast<long>(cls.size()) == G->order);
  }
}

TEST_CASE("commuting tuple class counts agree across three routes") {
  for (const char* name : {"s3", "a4", "q8", "d4"}) {
    GroupPtr G = corpus_group(name);
    for (long p : {2L, 3L}) {
      for (int n = 1; n <= 2; ++n) {
        TupleClassSet S = tuple_classes(G, n, p);
        CHECK(S.total_tuples == static_cast<long>(commuting_tuples(*G, n, p).size()));
        long direct = static_cast<long>(S.classes.size());
        CHECK(direct == centralizer_count_oracle(*G, n, p));
        CHECK(direct == burnside_class_count(*G, n, p));
      }
    }
  }
}

TEST_CASE("tuple class sizes sum to the tuple count") {
  GroupPtr G = corpus_group("s4");
  TupleClassSet S = tuple_classes(G, 2, 2);
  long total = 0;
  for (const auto& orb : S.classes) total += orb.size;
  CHECK(total == S.total_tuples);
  // class_of is consistent with the stored representative list
  for (size_t c = 0; c < S.classes.size(); ++c)
    CHECK(S.class_of(S.classes[c].rep) == static_cast<int>(c));
}

TEST_CASE("matrix action is functorial on tuple classes") {
  GroupPtr G = corpus_group("q8");
  TupleClassSet S = tuple_classes(G, 2, 2);
  int r = 2;  // exponents mod 4
  std::vector<std::vector<long>> A = {{1, 1}, {0, 1}};
  std::vector<std::vector<long>> B = {{0, 1}, {3, 0}};
  auto pa = matrix_action(S, A, r);
  auto pb = matrix_action(S, B, r);
  // with exponents read as (t_i) -> (prod_j t_j^{M[j][i]}) the composite
  // act_A(act_B(t)) collects exponents (B*A)[j][i]
  std::vector<std::vector<long>> BA = {{0, 0}, {0, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) BA[i][j] += B[i][k] * A[k][j];
      BA[i][j] %= 4;
    }
  auto pba = matrix_action(S, BA, r);
  for (size_t c = 0; c < S.classes.size(); ++c)
    CHECK(pa[static_cast<size_t>(pb[c])] == pba[c]);
}

TEST_CASE("identity matrix acts trivially") {
  GroupPtr G = corpus_group("s3");
  TupleClassSet S = tuple_classes(G, 2, 3);
  auto perm = matrix_action(S, {{1, 0}, {0, 1}}, 1);
  for (size_t c = 0; c < perm.size(); ++c) CHECK(perm[c] == static_cast<int>(c));
}

TEST_CASE("abelianization identifies the commutator quotient") {
  CHECK(abelianization(*corpus_group("s3")).quotient->order == 2);
  CHECK(abelianization(*corpus_group("s4")).quotient->order == 2);
  CHECK(abelianization(*corpus_group("a4")).quotient->order == 3);
  CHECK(abelianization(*corpus_group("q8")).quotient->order == 4);
  CHECK(abelianization(*corpus_group("d4")).quotient->order == 4);
  CHECK(abelianization(*corpus_group("z6")).quotient->order == 6);
  // projection is a homomorphism
  GroupPtr G = corpus_group("q8");
  Abelianization ab = abelianization(*G);
  for (int g = 0; g < G->order; ++g)
    for (int h = 0; h < G->order; ++h) {
      size_t gi = static_cast<size_t>(g), hi = static_cast<size_t>(h);
      int lhs = ab.projection[static_cast<size_t>(G->mul[gi][hi])];
      int rhs = ab.quotient
                    ->mul[static_cast<size_t>(ab.projection[gi])][static_cast<size_t>(
                        ab.projection[hi])];
      CHECK(lhs == rhs);
    }
}

TEST_CASE("subgroup closure carries the induced structure") {
  GroupPtr G = corpus_group("s4");
  // the three double transpositions plus identity form the Klein subgroup;
  // find one double transposition by order and cycle structure via closure
  std::vector<int> dts;
  ConjugacyClasses cc = conjugacy_classes(*G);
  for (const auto& cls : cc.classes)
    if (cls.size() == 3 && G->element_order[static_cast<size_t>(cls[0])] == 2)
      dts = cls;
  REQUIRE(dts.size() == 3);
  std::vector<int> elems = {0, dts[0], dts[1], dts[2]};
  Subgroup V = subgroup_from(*G, elems);
  CHECK(V.group->order == 4);
  CHECK(is_abelian(*V.group));
  // every non-identity element has order 2: the Klein group, not Z/4
  for (int g = 1; g < 4; ++g) CHECK(V.group->element_order[static_cast<size_t>(g)] == 2);
}

TEST_CASE("budget guard trips on oversized enumerations") {
  GroupPtr G = corpus_group("s4");
  CHECK_THROWS_AS(commuting_tuples(*G, 3, 2, 10), Error);
}
