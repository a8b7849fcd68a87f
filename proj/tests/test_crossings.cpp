#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "panelcross/analysis.hpp"
#include "panelcross/crossings.hpp"

using namespace panelcross;
using testing_oracles::make_test_instance;

namespace {

// Nine subjects over four tests whose input-order layout pays two avoidable
// crossings: one from ordering a tied t0 bucket against the following split,
// one from ordering the tied pair h,i against their later separation.
OpdInstance busy_instance() {
  return make_test_instance(7, {{0, 1, 1, 2, 3, 4, 5, 6, 6},
                                {1, 1, 0, 2, 3, 5, 5, 6, 4},
                                {2, 1, 1, 3, 2, 5, 4, 6, 4},
                                {3, 1, 2, 3, 2, 6, 4, 6, 5}});
}

CombinatorialLayout input_order_layout(const OpdInstance& inst) {
  std::vector<int> identity(static_cast<std::size_t>(inst.n()));
  for (int s = 0; s < inst.n(); ++s) identity[static_cast<std::size_t>(s)] = s;
  CombinatorialLayout layout;
  for (int i = 0; i <= inst.m(); ++i) layout.pis.push_back(detail::rebucket(inst, identity, i));
  return layout;
}

}  // namespace

TEST_SUITE("crossings") {
  TEST_CASE("inversion counting agrees with the quadratic oracle") {
    Pcg32 rng(11, 3);
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(8));
      std::vector<int> from(static_cast<std::size_t>(n)), to;
      for (int i = 0; i < n; ++i) from[static_cast<std::size_t>(i)] = i;
      to = from;
      for (int i = n - 1; i > 0; --i) std::swap(from[static_cast<std::size_t>(i)], from[rng.next_below(static_cast<std::uint32_t>(i + 1))]);
      for (int i = n - 1; i > 0; --i) std::swap(to[static_cast<std::size_t>(i)], to[rng.next_below(static_cast<std::uint32_t>(i + 1))]);
      CHECK(detail::inversions_between(from, to) == testing_oracles::oracle_crossings_between(from, to));
    }
  }

  TEST_CASE("forced crossing counts on small hand cases") {
    SUBCASE("adjacent swap is strongly forced") {
      const OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
      CHECK(count_strongly_forced(inst) == 1);
      CHECK(count_weakly_forced(inst) == 0);
      CHECK(pcr(inst) == 1);
    }
    SUBCASE("swap across a level stretch is weakly forced") {
      const OpdInstance inst = make_test_instance(2, {{0, 1}, {0, 0}, {1, 0}});
      CHECK(count_strongly_forced(inst) == 0);
      CHECK(count_weakly_forced(inst) == 1);
      CHECK(pcr(inst) == 1);
    }
    SUBCASE("parallel movement forces nothing") {
      const OpdInstance inst = make_test_instance(3, {{0, 1}, {1, 2}});
      CHECK(pcr(inst) == 0);
    }
    SUBCASE("swap there and back forces two crossings") {
      const OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}, {0, 1}});
      CHECK(count_strongly_forced(inst) == 2);
      CHECK(pcr(inst) == 2);
    }
  }

  TEST_CASE("busy instance: optimal beats the input-order layout by exactly the slack") {
    const OpdInstance inst = busy_instance();
    const CrossingReport best = count_layout_crossings(inst, optimal_layout(inst));
    CHECK(best.total == 9);
    CHECK(best.strong == 4);
    CHECK(best.weak == 5);

    const CombinatorialLayout naive = input_order_layout(inst);
    const CrossingReport paid = count_layout_crossings(inst, naive);
    CHECK(paid.total == 11);
    CHECK(has_redundant_crossings(inst, naive));
    CHECK(!has_redundant_crossings(inst, optimal_layout(inst)));
  }

  TEST_CASE("per-interval counts sum to the total") {
    const OpdInstance inst = random_instance(6, 3, 4, 99);
    const CrossingReport report = count_layout_crossings(inst, optimal_layout(inst));
    long long sum = 0;
    for (long long c : report.per_interval) sum += c;
    CHECK(sum == report.total);
    CHECK(report.per_interval.size() == static_cast<std::size_t>(inst.m()));
    CHECK(report.total == report.strong + report.weak);
  }

  TEST_CASE("optimal layout matches the exhaustive oracle on small instances") {
    Pcg32 rng(2026, 1);
    for (int trial = 0; trial < 120; ++trial) {
      const int n = 1 + static_cast<int>(rng.next_below(4));
      const int k = 1 + static_cast<int>(rng.next_below(3));
      const int m = 1 + static_cast<int>(rng.next_below(2));
      OpdInstance inst = random_instance(n, k, m, 7000 + trial);
      if (trial % 3 == 0) inst = inst.with_sigma(inst.sigma.reversed());

      const CombinatorialLayout layout = optimal_layout(inst);
      CHECK(layout_is_valid(inst, layout));
      CHECK(!has_redundant_crossings(inst, layout));

      const long long total = count_layout_crossings(inst, layout).total;
      CHECK(total == testing_oracles::oracle_min_pcr(inst));
      CHECK(total == brute_force_pcr(inst));
      CHECK(total == pcr(inst));
      CHECK(total == count_strongly_forced(inst) + count_weakly_forced(inst));
    }
  }

  TEST_CASE("forward pass alone already respects sigma") {
    const OpdInstance inst = random_instance(7, 4, 5, 5);
    CHECK(layout_is_valid(inst, forward_layout(inst)));
  }

  TEST_CASE("layout validation is enforced when counting") {
    const OpdInstance inst = make_test_instance(2, {{0, 1}, {1, 0}});
    CHECK_THROWS_AS(count_layout_crossings(inst, CombinatorialLayout{{{1, 0}, {1, 0}}}), DataError);
  }

  TEST_CASE("brute force respects its budget") {
    const OpdInstance inst = random_instance(9, 2, 3, 1);
    CHECK_THROWS_AS(brute_force_pcr(inst, 10), BudgetError);
    CHECK_THROWS_WITH_AS(brute_force_pcr(inst, 10), "too large for oracle", BudgetError);
  }

  TEST_CASE("rebucket is stable within a category") {
    const OpdInstance inst = make_test_instance(2, {{0, 0, 1, 0}, {1, 0, 0, 0}});
    const std::vector<int> order{3, 1, 0, 2};
    CHECK(detail::rebucket(inst, order, 1) == std::vector<int>{3, 1, 2, 0});
  }
}
