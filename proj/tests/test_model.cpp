#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "panelcross/model.hpp"

using namespace panelcross;
using testing_oracles::make_test_instance;

TEST_SUITE("model") {
  TEST_CASE("sigma orderings") {
    SUBCASE("identity ranks each category by its index") {
      const SigmaOrdering s = SigmaOrdering::identity(3);
      CHECK(s.rank == std::vector<int>{0, 1, 2});
      CHECK(s.order() == std::vector<int>{0, 1, 2});
    }
    SUBCASE("from_order inverts order into ranks") {
      const SigmaOrdering s = SigmaOrdering::from_order({2, 0, 1});
      CHECK(s.rank == std::vector<int>{1, 2, 0});
      CHECK(s.order() == std::vector<int>{2, 0, 1});
    }
    SUBCASE("reversed flips ranks") {
      const SigmaOrdering s = SigmaOrdering::from_order({2, 0, 1}).reversed();
      CHECK(s.rank == std::vector<int>{1, 0, 2});
    }
    SUBCASE("non-permutations are rejected") {
      CHECK_THROWS_AS(SigmaOrdering({0, 0, 2}), DataError);
      CHECK_THROWS_AS(SigmaOrdering({1, 2, 3}), DataError);
      CHECK_THROWS_AS(SigmaOrdering::from_order({0, 2}), DataError);
    }
  }

  TEST_CASE("validate_instance") {
    SUBCASE("well formed instance has no violations") {
      const OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
      CHECK(validate_instance(inst).empty());
    }
    SUBCASE("single timestamp is rejected") {
      OpdInstance inst = make_test_instance(2, {{0, 1}});
      const auto violations = validate_instance(inst);
      REQUIRE(!violations.empty());
      CHECK(violations.front().find("timestamps") != std::string::npos);
    }
    SUBCASE("category index out of range names the subject and timestamp") {
      OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 2}});
      const auto violations = validate_instance(inst);
      REQUIRE(violations.size() == 1);
      CHECK(violations.front().find("s1") != std::string::npos);
      CHECK(violations.front().find("t1") != std::string::npos);
    }
    SUBCASE("duplicate subjects and categories are reported") {
      OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
      inst.subjects[1] = "s0";
      inst.categories.labels[1] = "c1";
      const auto violations = validate_instance(inst);
      CHECK(violations.size() == 2);
    }
    SUBCASE("ragged test row is reported") {
      OpdInstance inst = make_test_instance(2, {{0, 1}, {1}});
      CHECK(validate_instance(inst).size() == 1);
    }
    SUBCASE("sigma of the wrong size is reported") {
      OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
      inst.sigma = SigmaOrdering::identity(3);
      CHECK(validate_instance(inst).size() == 1);
    }
  }

  TEST_CASE("induced_permutation") {
    CHECK(induced_permutation({3, 1, 4, 0, 2}, {0, 1, 2}) == std::vector<int>{1, 0, 2});
    CHECK(induced_permutation({3, 1, 4, 0, 2}, {4}) == std::vector<int>{4});
    CHECK(induced_permutation({1, 0}, {}) == std::vector<int>{});
    CHECK_THROWS_AS(induced_permutation({1, 0}, {2}), DataError);
  }

  TEST_CASE("subjects_in_category lists subjects in index order") {
    const OpdInstance inst = make_test_instance(2, {{1, 0, 1}, {0, 0, 1}});
    CHECK(subjects_in_category(inst, 0, 1) == std::vector<int>{0, 2});
    CHECK(subjects_in_category(inst, 1, 0) == std::vector<int>{0, 1});
    CHECK(subjects_in_category(inst, 1, 1) == std::vector<int>{2});
  }

  TEST_CASE("layout_is_valid") {
    const OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
    SUBCASE("category-sorted layout is valid") {
      CHECK(layout_is_valid(inst, CombinatorialLayout{{{0, 1}, {1, 0}}}));
    }
    SUBCASE("rank inversion within a timestamp is invalid") {
      CHECK(!layout_is_valid(inst, CombinatorialLayout{{{1, 0}, {1, 0}}}));
    }
    SUBCASE("structural problems throw") {
      CHECK_THROWS_AS(layout_is_valid(inst, CombinatorialLayout{{{0, 1}}}), DataError);
      CHECK_THROWS_AS(layout_is_valid(inst, CombinatorialLayout{{{0, 0}, {1, 0}}}), DataError);
      OpdInstance no_sigma = inst;
      no_sigma.has_sigma = false;
      CHECK_THROWS_AS(layout_is_valid(no_sigma, CombinatorialLayout{{{0, 1}, {1, 0}}}), DataError);
    }
  }

  TEST_CASE("with_sigma replaces the ordering") {
    const OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
    const OpdInstance flipped = inst.with_sigma(inst.sigma.reversed());
    CHECK(flipped.rank_at(0, 0) == 1);
    CHECK(inst.rank_at(0, 0) == 0);
  }
}
