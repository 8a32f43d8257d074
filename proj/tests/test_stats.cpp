#include <catch_amalgamated.hpp>

#include <cmath>

#include "moaodv/random.hpp"
#include "moaodv/stats.hpp"

using namespace moaodv;

namespace {

// Two-sided p by visiting all 2^n sign patterns of the given ranks.
double enumerate_p(const std::vector<double>& ranks, double r_plus) {
  const std::size_t n = ranks.size();
  double total = 0.0;
  for (double r : ranks) total += r;
  const double mean = total / 2.0;
  const double observed = std::abs(r_plus - mean);
  std::size_t extreme = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += ranks[i];
    }
    if (std::abs(s - mean) >= observed - 1e-9) ++extreme;
  }
  return static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
}

}  // namespace

TEST_CASE("signed-rank sums by hand", "[stats]") {
  const std::vector<double> zero{0, 0, 0};
  const auto w1 = wilcoxon_signed_rank(std::vector<double>{1, 2, 3}, zero);
  CHECK(w1.r_plus == 6.0);
  CHECK(w1.r_minus == 0.0);
  const auto w2 = wilcoxon_signed_rank(std::vector<double>{3, -1, 2}, zero);
  CHECK(w2.r_plus == 5.0);
  CHECK(w2.r_minus == 1.0);
  const std::vector<double> same{1, 2, 3};
  CHECK(wilcoxon_signed_rank(same, same).degenerate);
  CHECK_THROWS(wilcoxon_signed_rank(same, std::span(zero).subspan(0, 2)));
}

TEST_CASE("exact p-values match full sign enumeration", "[stats]") {
  RandomSource rng(88);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.uniform_index(12);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      // Rounded values create tied magnitudes and some zero differences.
      a[i] = std::round(rng.uniform(-5, 5));
      b[i] = std::round(rng.uniform(-5, 5));
    }
    const auto w = wilcoxon_signed_rank(a, b);
    if (w.degenerate) continue;
    std::vector<double> mags;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) mags.push_back(std::abs(a[i] - b[i]));
    }
    const auto ranks = average_ranks(mags);
    REQUIRE(w.exact);
    REQUIRE(w.p_value == Catch::Approx(enumerate_p(ranks, w.r_plus)).epsilon(1e-12));
  }
}

TEST_CASE("rank sums add up to n(n+1)/2", "[stats]") {
  RandomSource rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 5 + rng.uniform_index(40);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform();
      b[i] = rng.uniform();
    }
    const auto w = wilcoxon_signed_rank(a, b);
    const double m = static_cast<double>(w.n);
    REQUIRE(w.r_plus + w.r_minus == Catch::Approx(m * (m + 1) / 2));
    REQUIRE(w.p_value >= 0.0);
    REQUIRE(w.p_value <= 1.0);
    REQUIRE(w.exact == (w.n <= 20));
  }
}

TEST_CASE("normal approximation for large samples", "[stats]") {
  // 30 distinct positive differences: R+ = 465, the most extreme value.
  std::vector<double> a(30), b(30, 0.0);
  for (int i = 0; i < 30; ++i) a[i] = i + 1;
  const auto w = wilcoxon_signed_rank(a, b);
  CHECK_FALSE(w.exact);
  const double mean = 30.0 * 31.0 / 4.0;
  const double sd = std::sqrt(30.0 * 31.0 * 61.0 / 24.0);
  const double z = (465.0 - mean - 0.5) / sd;
  CHECK(w.p_value == Catch::Approx(std::erfc(z / std::sqrt(2.0))).epsilon(1e-12));
}

TEST_CASE("average ranks", "[stats]") {
  CHECK(average_ranks(std::vector<double>{3, 1, 2}) == std::vector<double>{3, 1, 2});
  CHECK(average_ranks(std::vector<double>{5, 5, 1, 7}) == std::vector<double>{2.5, 2.5, 1, 4});
}

TEST_CASE("friedman hand values", "[stats]") {
  const auto mono = friedman_rank({{1, 2, 3}, {10, 20, 30}});
  CHECK(mono.chi_square == Catch::Approx(4.0).epsilon(1e-14));
  CHECK(mono.mean_ranks == std::vector<double>{1, 2, 3});
  CHECK(mono.p_value == Catch::Approx(std::exp(-2.0)).epsilon(1e-12));

  const auto best = friedman_rank({{0, 5, 6}, {1, 2, 9}, {0.5, 3, 1}});
  CHECK(best.mean_ranks[0] == 1.0);

  const auto flat = friedman_rank({{4, 4, 4}, {2, 2, 2}});
  for (double r : flat.mean_ranks) CHECK(r == 2.0);
  CHECK(flat.chi_square == 0.0);
  CHECK(flat.p_value == Catch::Approx(1.0));

  CHECK_THROWS(friedman_rank({{1, 2}, {1}}));
  CHECK_THROWS(friedman_rank({{1, 2}}));
}

TEST_CASE("friedman mean ranks sum to k(k+1)/2", "[stats]") {
  RandomSource rng(9);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 2 + rng.uniform_index(20);
    const std::size_t k = 2 + rng.uniform_index(6);
    std::vector<std::vector<double>> m(n, std::vector<double>(k));
    for (auto& row : m) {
      for (auto& v : row) v = std::round(rng.uniform(0, 4));
    }
    const auto f = friedman_rank(m);
    double sum = 0.0;
    for (double r : f.mean_ranks) sum += r;
    REQUIRE(sum == Catch::Approx(k * (k + 1) / 2.0));
  }
}

TEST_CASE("median", "[stats]") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 2, 3}) == 2.5);
  CHECK_THROWS(median({}));
}
