#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "panelcross/analysis.hpp"

using namespace panelcross;

namespace {

// Largest pcr over every assignment of the second test, first test fixed to
// consecutive blocks of the given sizes.
long long brute_two_test_max(const std::vector<long long>& parts) {
  int n = 0;
  for (long long p : parts) n += static_cast<int>(p);
  const int k = static_cast<int>(parts.size());
  std::vector<int> t0;
  for (int c = 0; c < k; ++c) t0.insert(t0.end(), static_cast<std::size_t>(parts[static_cast<std::size_t>(c)]), c);

  std::vector<int> t1(static_cast<std::size_t>(n), 0);
  long long best = 0;
  while (true) {
    best = std::max(best, pcr(testing_oracles::make_test_instance(k, {t0, t1})));
    int pos = 0;
    while (pos < n && t1[static_cast<std::size_t>(pos)] == k - 1) {
      t1[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == n) break;
    ++t1[static_cast<std::size_t>(pos)];
  }
  return best;
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("two-test extremal count") {
    CHECK(ecr_two_tests({2, 2}) == 4);
    CHECK(ecr_two_tests({3, 2}) == 6);
    CHECK(ecr_two_tests({1, 1, 1}) == 3);
    CHECK(ecr_two_tests({5}) == 0);
    CHECK(ecr_two_tests({}) == 0);
    CHECK_THROWS_AS(ecr_two_tests({-1, 3}), DataError);

    SUBCASE("matches the brute-force maximum for every small partition") {
      for (int n = 1; n <= 5; ++n) {
        std::vector<long long> parts;
        const auto recurse = [&](auto&& self, int remaining, long long largest) -> void {
          if (remaining == 0) {
            if (parts.size() <= 3) CHECK(brute_two_test_max(parts) == ecr_two_tests(parts));
            return;
          }
          for (long long p = std::min<long long>(largest, remaining); p >= 1; --p) {
            parts.push_back(p);
            self(self, remaining - static_cast<int>(p), p);
            parts.pop_back();
          }
        };
        recurse(recurse, n, n);
      }
    }
  }

  TEST_CASE("balanced partitions") {
    CHECK(balanced_partition(7, 3) == std::vector<long long>{3, 2, 2});
    CHECK(balanced_partition(6, 3) == std::vector<long long>{2, 2, 2});
    CHECK(balanced_partition(2, 4) == std::vector<long long>{1, 1, 0, 0});
  }

  TEST_CASE("general extremal count") {
    CHECK(ecr_general(4, 2, 2) == 8);
    CHECK(ecr_general(5, 2, 1) == 6);
    CHECK(ecr_general(5, 2, 3) == 18);
    SUBCASE("one interval reduces to the two-test formula") {
      for (int n = 1; n <= 9; ++n)
        for (int k = 1; k <= 5; ++k) CHECK(ecr_general(n, k, 1) == ecr_two_tests(balanced_partition(n, k)));
    }
    SUBCASE("with at least as many categories as subjects every pair crosses each interval") {
      for (int n = 1; n <= 6; ++n)
        for (int m = 1; m <= 4; ++m) CHECK(ecr_general(n, n, m) == static_cast<long long>(m) * n * (n - 1) / 2);
    }
  }

  TEST_CASE("extremal generator attains the bound") {
    for (int n = 1; n <= 8; ++n)
      for (int k = 1; k <= 4; ++k)
        for (int m = 1; m <= 3; ++m) {
          const OpdInstance inst = extremal_instance_general(n, k, m);
          CHECK(validate_instance(inst).empty());
          CHECK(pcr(inst) == ecr_general(n, k, m));
        }
  }

  TEST_CASE("exhaustive extremal maximum on tiny shapes") {
    for (int n = 1; n <= 3; ++n)
      for (int k = 1; k <= 2; ++k)
        for (int m = 1; m <= 2; ++m) {
          const int cells = n * (m + 1);
          long long combos = 1;
          for (int i = 0; i < cells; ++i) combos *= k;
          long long best = -1;
          for (long long code = 0; code < combos; ++code) {
            long long rest = code;
            std::vector<std::vector<int>> tests(static_cast<std::size_t>(m + 1), std::vector<int>(static_cast<std::size_t>(n)));
            for (int i = 0; i <= m; ++i)
              for (int s = 0; s < n; ++s) {
                tests[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)] = static_cast<int>(rest % k);
                rest /= k;
              }
            best = std::max(best, pcr(testing_oracles::make_test_instance(k, tests)));
          }
          CHECK(best == ecr_general(n, k, m));
        }
  }

  TEST_CASE("consistency detection") {
    CHECK(instance_is_consistent(testing_oracles::make_test_instance(2, {{0, 0}, {0, 1}})));
    CHECK(instance_is_consistent(testing_oracles::make_test_instance(3, {{0, 1}, {1, 2}})));
    CHECK(!instance_is_consistent(testing_oracles::make_test_instance(2, {{0, 1}, {1, 0}})));
    CHECK(!instance_is_consistent(testing_oracles::make_test_instance(3, {{0, 2}, {1, 1}})));

    SUBCASE("consistency is judged against sigma ranks, not raw indices") {
      const OpdInstance ascending = testing_oracles::make_test_instance(2, {{0, 0}, {0, 1}});
      CHECK(!instance_is_consistent(ascending.with_sigma(ascending.sigma.reversed())));
      OpdInstance no_sigma = ascending;
      no_sigma.has_sigma = false;
      CHECK_THROWS_AS(instance_is_consistent(no_sigma), DataError);
    }
  }

  TEST_CASE("bounds for consistent instances") {
    CHECK(consistent_bounds(4, 3, 1) == std::pair<long long, long long>{4, 6});
    CHECK(consistent_bounds(5, 2, 3).second == 0);
    CHECK(consistent_bounds(2, 4, 2) == std::pair<long long, long long>{2, 2});
    CHECK_THROWS_AS(consistent_bounds(4, 1, 1), DataError);

    SUBCASE("lower stays within a factor two of upper once three categories exist") {
      for (int n = 2; n <= 10; ++n)
        for (int k = 3; k <= 6; ++k)
          for (int m = 1; m <= 4; ++m) {
            const auto [lower, upper] = consistent_bounds(n, k, m);
            CHECK(lower <= upper);
            CHECK(2 * lower >= upper);
          }
    }
  }

  TEST_CASE("consistent extremal generator") {
    CHECK(pcr(consistent_extremal_instance(2, 3, 1)) == 1);
    CHECK(pcr(consistent_extremal_instance(4, 3, 1)) == 4);
    for (int n = 2; n <= 9; ++n)
      for (int k = 2; k <= 5; ++k)
        for (int m = 1; m <= 4; ++m) {
          const OpdInstance inst = consistent_extremal_instance(n, k, m);
          CHECK(validate_instance(inst).empty());
          CHECK(instance_is_consistent(inst));
          const auto [lower, upper] = consistent_bounds(n, k, m);
          const long long value = pcr(inst);
          CHECK(value == lower);
          CHECK(value <= upper);
        }
  }

  TEST_CASE("expected crossing count") {
    CHECK(expected_pcr(2, 2, 1) == Rational(1, 8));
    CHECK(expected_pcr(2, 2, 2) == Rational(5, 16));
    CHECK(expected_pcr(3, 2, 2) == Rational(15, 16));
    CHECK(expected_pcr(5, 3, 4) == Rational(2840, 243));
    CHECK(expected_pcr(4, 2, 1) == Rational(3, 4));
    CHECK_THROWS_AS(expected_pcr(3, 1, 2), DataError);

    SUBCASE("closed form equals the interval series") {
      for (int n = 1; n <= 6; ++n)
        for (int k = 2; k <= 5; ++k)
          for (int m = 1; m <= 5; ++m) CHECK(expected_pcr(n, k, m) == expected_pcr_series(n, k, m));
    }
  }

  TEST_CASE("rational arithmetic") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(3, 4) * Rational(2, 3) == Rational(1, 2));
    CHECK(Rational(1, 2) - Rational(3, 4) == Rational(-1, 4));
    CHECK(Rational(1, 2) / Rational(1, 8) == Rational(4));
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(5, -10).to_string() == "-1/2");
    CHECK(Rational(8, 4).to_string() == "2");
    CHECK(Rational::pow(Rational(1, 2), 3) == Rational(1, 8));
    CHECK(Rational::pow(Rational(7, 3), 0) == Rational(1));
    CHECK(Rational(1, 4).to_double() == doctest::Approx(0.25));
  }

  TEST_CASE("pcg32 reference stream") {
    Pcg32 rng(42, 54);
    CHECK(rng.next() == 0xa15c02b7u);
    CHECK(rng.next() == 0x7b47f409u);
    CHECK(rng.next() == 0xba1d3330u);

    SUBCASE("bounded draws stay in range and depend on the stream") {
      Pcg32 a(9, 0), b(9, 1);
      bool diverged = false;
      for (int i = 0; i < 64; ++i) {
        const std::uint32_t va = a.next_below(10), vb = b.next_below(10);
        CHECK(va < 10);
        diverged = diverged || va != vb;
      }
      CHECK(diverged);
    }
  }

  TEST_CASE("random instances") {
    const OpdInstance first = random_instance(5, 3, 2, 31);
    const OpdInstance second = random_instance(5, 3, 2, 31);
    CHECK(first.tests == second.tests);
    CHECK(validate_instance(first).empty());
    CHECK(random_instance(5, 3, 2, 32).tests != first.tests);
    CHECK(pcr(random_instance(4, 1, 3, 2)) == 0);

    SUBCASE("draws are close to uniform across categories") {
      const int k = 4;
      std::vector<long long> hits(k, 0);
      long long total = 0;
      for (int seed = 0; seed < 400; ++seed) {
        const OpdInstance inst = random_instance(10, k, 9, 50000 + seed);
        for (const auto& row : inst.tests)
          for (int c : row) {
            ++hits[static_cast<std::size_t>(c)];
            ++total;
          }
      }
      const double p = 1.0 / k;
      const double tolerance = 4.0 * std::sqrt(p * (1 - p) / static_cast<double>(total));
      for (long long h : hits) CHECK(std::abs(static_cast<double>(h) / static_cast<double>(total) - p) < tolerance);
    }
  }

  TEST_CASE("monte carlo estimation") {
    const MonteCarloEstimate one = monte_carlo_expected_pcr(2, 2, 1, 1, 5);
    CHECK(one.samples == 1);
    CHECK(!std::isfinite(one.stderr_of_mean));

    const MonteCarloEstimate est = monte_carlo_expected_pcr(2, 2, 1, 4000, 5);
    CHECK(est.samples == 4000);
    CHECK(std::isfinite(est.stderr_of_mean));
    CHECK(std::abs(est.mean - 0.125) < 4.0 * est.stderr_of_mean);

    SUBCASE("same seed reproduces the estimate") {
      const MonteCarloEstimate again = monte_carlo_expected_pcr(2, 2, 1, 4000, 5);
      CHECK(again.mean == est.mean);
    }
  }
}
