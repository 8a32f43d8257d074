#include "moaodv/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace moaodv {

namespace {

bool f1_less(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1 < b.f1 || (a.f1 == b.f1 && a.f2 < b.f2);
}

double distance(const ObjectiveVector& a, const ObjectiveVector& b) {
  return std::hypot(a.f1 - b.f1, a.f2 - b.f2);
}

void check_bounds(const ObjectiveBounds& b) {
  if (!(b.f1_max > b.f1_min) || !(b.f2_max > b.f2_min)) {
    throw std::invalid_argument("normalization bounds are degenerate");
  }
}

}  // namespace

Front::Front(std::vector<ObjectiveVector> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].f1 < points_[i].f1 && points_[i - 1].f2 > points_[i].f2)) {
      throw std::invalid_argument("front must be non-dominated and sorted ascending by f1");
    }
  }
}

Front Front::from_points(std::span<const ObjectiveVector> points) {
  std::vector<ObjectiveVector> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end(), f1_less);
  std::vector<ObjectiveVector> kept;
  double best_f2 = std::numeric_limits<double>::infinity();
  for (const auto& p : sorted) {
    // Sorted by (f1, f2): p is non-dominated iff it improves the best f2 so far.
    if (p.f2 < best_f2) {
      kept.push_back(p);
      best_f2 = p.f2;
    }
  }
  return Front(std::move(kept));
}

ReferenceFront merge_reference_front(std::span<const Front> fronts) {
  std::vector<ObjectiveVector> all;
  for (const auto& f : fronts) all.insert(all.end(), f.points().begin(), f.points().end());
  if (all.empty()) throw std::invalid_argument("merge_reference_front: all fronts are empty");
  ReferenceFront ref{Front::from_points(all), {}};
  const auto& pts = ref.points;
  // Sorted and non-dominated: f1 rises and f2 falls along the list.
  ref.bounds = {pts.front().f1, pts.back().f1, pts.back().f2, pts.front().f2};
  return ref;
}

Front normalize_front(const Front& f, const ObjectiveBounds& b) {
  check_bounds(b);
  std::vector<ObjectiveVector> out;
  out.reserve(f.size());
  for (const auto& p : f.points()) {
    const ObjectiveVector q{(p.f1 - b.f1_min) / (b.f1_max - b.f1_min),
                            (p.f2 - b.f2_min) / (b.f2_max - b.f2_min)};
    if (q.f1 < 0.0 || q.f1 > 1.0 || q.f2 < 0.0 || q.f2 > 1.0) continue;
    out.push_back(q);
  }
  // Affine maps with positive slope keep order and dominance, but rounding
  // can merge neighbours.
  return Front::from_points(out);
}

Front normalize_front(const Front& f, const ReferenceFront& ref) {
  return normalize_front(f, ref.bounds);
}

double hypervolume_2d(const Front& normalized) {
  double volume = 0.0;
  const auto pts = normalized.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double next_f1 = i + 1 < pts.size() ? pts[i + 1].f1 : 1.0;
    volume += (next_f1 - pts[i].f1) * (1.0 - pts[i].f2);
  }
  return volume;
}

double normalized_hypervolume(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds) {
  return hypervolume_2d(normalize_front(Front::from_points(points), bounds));
}

double additive_epsilon(const Front& a, const Front& ref) {
  if (a.empty() || ref.empty()) throw std::invalid_argument("additive_epsilon: empty front");
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& r : ref.points()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : a.points()) {
      best = std::min(best, std::max(p.f1 - r.f1, p.f2 - r.f2));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double spread(const Front& f, const Front& ref) {
  if (f.empty()) throw std::invalid_argument("spread: empty front");
  if (ref.empty()) throw std::invalid_argument("spread: empty reference front");
  if (f.size() == 1) return 1.0;

  const double d_first = distance(ref.front(), f.front());
  const double d_last = distance(ref.back(), f.back());
  std::vector<double> gaps(f.size() - 1);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) gaps[i] = distance(f[i], f[i + 1]);
  double mean = 0.0;
  for (double d : gaps) mean += d;
  mean /= static_cast<double>(gaps.size());
  double deviation = 0.0;
  for (double d : gaps) deviation += std::abs(d - mean);

  const double denominator = d_first + d_last + static_cast<double>(gaps.size()) * mean;
  if (denominator == 0.0) return 0.0;
  return (d_first + d_last + deviation) / denominator;
}

IndicatorTriple compute_indicators(const Front& f, const ReferenceFront& ref) {
  const Front nf = normalize_front(f, ref.bounds);
  const Front nref = normalize_front(ref.points, ref.bounds);
  if (nf.empty()) return {0.0, std::numeric_limits<double>::infinity(), 1.0};
  return {hypervolume_2d(nf), additive_epsilon(nf, nref), spread(nf, nref)};
}

}  // namespace moaodv
