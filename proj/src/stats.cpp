#include "moaodv/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace moaodv {

namespace {

constexpr std::size_t kExactLimit = 20;

double normal_upper(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

}  // namespace

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    i = j;
  }
  return ranks;
}

double wilcoxon_exact_p(std::span<const double> ranks, double r_plus) {
  // Ranks are multiples of 1/2, so doubled ranks are integers and the
  // distribution of 2 R+ fits a counting table.
  std::vector<std::size_t> doubled;
  std::size_t total = 0;
  for (double r : ranks) {
    doubled.push_back(static_cast<std::size_t>(std::lround(2.0 * r)));
    total += doubled.back();
  }
  std::vector<double> ways(total + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t d : doubled) {
    for (std::size_t s = total; s >= d; --s) {
      ways[s] += ways[s - d];
      if (s == d) break;
    }
  }
  const double count = std::ldexp(1.0, static_cast<int>(ranks.size()));
  const double mean2 = 0.5 * static_cast<double>(total);
  const double dev = std::abs(2.0 * r_plus - mean2);
  double extreme = 0.0;
  for (std::size_t s = 0; s <= total; ++s) {
    if (std::abs(static_cast<double>(s) - mean2) >= dev - 1e-9) extreme += ways[s];
  }
  return std::min(1.0, extreme / count);
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("wilcoxon: samples must be paired");
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  WilcoxonResult out;
  out.n = diffs.size();
  if (diffs.empty()) {
    out.degenerate = true;
    return out;
  }
  std::vector<double> magnitudes(diffs.size());
  std::transform(diffs.begin(), diffs.end(), magnitudes.begin(), [](double d) { return std::abs(d); });
  const std::vector<double> ranks = average_ranks(magnitudes);
  for (std::size_t i = 0; i < diffs.size(); ++i) (diffs[i] > 0.0 ? out.r_plus : out.r_minus) += ranks[i];

  if (out.n <= kExactLimit) {
    out.exact = true;
    out.p_value = wilcoxon_exact_p(ranks, out.r_plus);
    return out;
  }
  const double n = static_cast<double>(out.n);
  double tie_term = 0.0;
  std::vector<double> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double mean = n * (n + 1.0) / 4.0;
  const double sd = std::sqrt(n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0);
  const double z = std::max(0.0, std::abs(out.r_plus - mean) - 0.5) / sd;
  out.p_value = std::min(1.0, 2.0 * normal_upper(z));
  return out;
}

FriedmanResult friedman_rank(const std::vector<std::vector<double>>& matrix) {
  if (matrix.size() < 2) throw std::invalid_argument("friedman: need at least two blocks");
  const std::size_t k = matrix.front().size();
  if (k < 2) throw std::invalid_argument("friedman: need at least two treatments");
  FriedmanResult out;
  out.mean_ranks.assign(k, 0.0);
  for (const auto& row : matrix) {
    if (row.size() != k) throw std::invalid_argument("friedman: ragged matrix");
    const auto ranks = average_ranks(row);
    for (std::size_t j = 0; j < k; ++j) out.mean_ranks[j] += ranks[j];
  }
  const double n = static_cast<double>(matrix.size());
  const double kd = static_cast<double>(k);
  double sum = 0.0;
  for (auto& r : out.mean_ranks) {
    r /= n;
    sum += (r - (kd + 1.0) / 2.0) * (r - (kd + 1.0) / 2.0);
  }
  out.chi_square = 12.0 * n / (kd * (kd + 1.0)) * sum;
  const boost::math::chi_squared dist(kd - 1.0);
  out.p_value = boost::math::cdf(boost::math::complement(dist, out.chi_square));
  return out;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of an empty sample");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

}  // namespace moaodv
