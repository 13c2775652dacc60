#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "phenostruct/counting.hpp"

using namespace pstruct;

TEST_CASE("one-set degrees match the closed forms") {
  auto r = one_set_degree(1, 4, 2);  // euclidean plane
  REQUIRE(r.finite());
  CHECK(r.degree == 3);

  r = one_set_degree(1, 3, 1);  // one-dimensional translations
  REQUIRE(r.finite());
  CHECK(r.degree == 1);

  r = one_set_degree(2, 3, 2);  // dimetric plane
  REQUIRE(r.finite());
  CHECK(r.degree == 2);

  r = one_set_degree(1, 4, 3);  // dimension off the relation
  CHECK_FALSE(r.finite());
  CHECK(r.witness.find("m > s(M-2)") != std::string::npos);
}

TEST_CASE("two-set degrees match the closed forms") {
  auto r = two_set_degree(1, 3, 3, 2, 2);
  REQUIRE(r.finite());
  CHECK(r.degree == 4);

  r = two_set_degree(1, 2, 2, 1, 1);
  REQUIRE(r.finite());
  CHECK(r.degree == 1);

  r = two_set_degree(2, 2, 2, 2, 2);
  REQUIRE(r.finite());
  CHECK(r.degree == 2);

  CHECK_FALSE(two_set_degree(1, 3, 3, 1, 2).finite());
}

TEST_CASE("polyary scan: binary finite, ternary saturated") {
  auto p = polyary_group_symmetry(binary_one_set(1, 4, 2), 20);
  REQUIRE(p.finite());
  CHECK(p.degree == 3);

  // ternary geometry on one set
  p = polyary_group_symmetry(StructureShape{1, {{2, 3, 4}}}, 20);
  REQUIRE(p.saturated());
  CHECK(p.witness.front() <= 20);

  // ternary structure on two sets, multiplicity (2,1)
  for (Int m = 1; m <= 4; ++m)
    for (Int n = 1; n <= 4; ++n) {
      auto q = polyary_group_symmetry(StructureShape{1, {{m, 2, 3}, {n, 1, 2}}}, 18);
      CHECK(q.saturated());
    }

  // ternary on three sets
  p = polyary_group_symmetry(StructureShape{1, {{1, 1, 2}, {1, 1, 2}, {1, 1, 2}}}, 14);
  CHECK(p.saturated());
}

TEST_CASE("dependent counts: closed forms") {
  CHECK(dependent_count(binary_one_set(1, 4, 2), {4}) == 1);
  CHECK(dependent_count(binary_one_set(1, 4, 2), {5}) == 3);
  CHECK(dependent_count(StructureShape{1, {{1, 1, 2}, {1, 1, 2}}}, {3, 3}) == 4);
}

TEST_CASE("dependent counts agree with the superposition enumeration") {
  // binary one-set
  for (Int M = 3; M <= 6; ++M)
    for (Int Mp = M; Mp <= 10; ++Mp) {
      const auto shape = binary_one_set(1, M, 1);
      CHECK(dependent_count(shape, {Mp}) == oracles::superposition_count(shape, {Mp}));
    }
  // ternary one-set
  for (Int M = 4; M <= 6; ++M)
    for (Int Mp = M; Mp <= 9; ++Mp) {
      const StructureShape shape{1, {{1, 3, M}}};
      CHECK(dependent_count(shape, {Mp}) == oracles::superposition_count(shape, {Mp}));
    }
  // two-set
  for (Int M = 2; M <= 4; ++M)
    for (Int N = 2; N <= 3; ++N)
      for (Int Mp = M; Mp <= 6; ++Mp)
        for (Int Np = N; Np <= 5; ++Np) {
          const auto shape = binary_two_set(1, M, N, 1, 1);
          CHECK(dependent_count(shape, {Mp, Np}) ==
                oracles::superposition_count(shape, {Mp, Np}));
        }
  // component multiplier
  const auto shape = binary_one_set(3, 4, 6);
  CHECK(dependent_count(shape, {7}) == oracles::superposition_count(shape, {7}));
}

TEST_CASE("cross-validation with the scan over s <= 3, M, N <= 8") {
  for (Int s = 1; s <= 3; ++s)
    for (Int M = 3; M <= 8; ++M) {
      const Int m = s * (M - 2);
      auto direct = one_set_degree(s, M, m);
      auto scan = polyary_group_symmetry(binary_one_set(s, M, m), 40);
      REQUIRE(direct.finite());
      REQUIRE(scan.finite());
      CHECK(direct.degree == scan.degree);
    }
  for (Int s = 1; s <= 3; ++s)
    for (Int M = 2; M <= 8; ++M)
      for (Int N = 2; N <= 8; ++N) {
        auto direct = two_set_degree(s, M, N, s * (N - 1), s * (M - 1));
        auto scan =
            polyary_group_symmetry(binary_two_set(s, M, N, s * (N - 1), s * (M - 1)), 24);
        REQUIRE(direct.finite());
        REQUIRE(scan.finite());
        CHECK(direct.degree == scan.degree);
      }
}

TEST_CASE("saturation for arity four") {
  CHECK(polyary_group_symmetry(StructureShape{1, {{2, 4, 5}}}, 20).saturated());
  CHECK(polyary_group_symmetry(StructureShape{1, {{2, 3, 4}, {2, 1, 2}}}, 12).saturated());
  CHECK(polyary_group_symmetry(StructureShape{1, {{2, 2, 3}, {2, 2, 3}}}, 12).saturated());
}

TEST_CASE("inconclusive verdict when the bound is too small") {
  // saturation for this shape arrives near M' = 30
  auto p = polyary_group_symmetry(binary_one_set(2, 7, 9), 12);
  CHECK(p.kind == PolyaryKind::inconclusive);
  CHECK(polyary_group_symmetry(binary_one_set(2, 7, 9), 60).saturated());
}
