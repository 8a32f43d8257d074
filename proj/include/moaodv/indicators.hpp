#pragma once

#include <span>
#include <vector>

#include "moaodv/evaluator.hpp"
#include "moaodv/objectives.hpp"

namespace moaodv {

/// Mutually non-dominated points sorted ascending by f1 (so f2 is strictly
/// decreasing). Duplicates are not allowed.
class Front {
 public:
  Front() = default;
  /// Throws std::invalid_argument if the points violate the invariant.
  explicit Front(std::vector<ObjectiveVector> points);

  /// Keeps only the non-dominated, distinct points and sorts them.
  static Front from_points(std::span<const ObjectiveVector> points);

  std::span<const ObjectiveVector> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const ObjectiveVector& operator[](std::size_t i) const { return points_[i]; }
  const ObjectiveVector& front() const { return points_.front(); }
  const ObjectiveVector& back() const { return points_.back(); }

  friend bool operator==(const Front&, const Front&) = default;

 private:
  std::vector<ObjectiveVector> points_;
};

struct ReferenceFront {
  Front points;
  ObjectiveBounds bounds;
};

/// Union of all fronts with dominated and duplicate points removed; bounds
/// are the per-objective extremes of the union.
ReferenceFront merge_reference_front(std::span<const Front> fronts);

/// Maps each objective to (v - min) / (max - min). Points falling outside
/// [0, 1]^2 are discarded.
Front normalize_front(const Front& f, const ObjectiveBounds& bounds);
Front normalize_front(const Front& f, const ReferenceFront& ref);

/// Area dominated by a normalized front with reference point (1, 1).
double hypervolume_2d(const Front& normalized);

/// Normalizes `points` against `bounds` and returns their hypervolume.
double normalized_hypervolume(std::span<const ObjectiveVector> points, const ObjectiveBounds& bounds);

/// max over r in ref of min over p in a of max_i (p_i - r_i).
double additive_epsilon(const Front& a, const Front& ref);

/// Deb's spread Delta against the extremes of `ref`. A single-point front
/// yields 1.0.
double spread(const Front& f, const Front& ref);

struct IndicatorTriple {
  double hypervolume;
  double epsilon;
  double spread;
};

/// Normalizes both against `ref.bounds` and computes all three indicators.
IndicatorTriple compute_indicators(const Front& f, const ReferenceFront& ref);

}  // namespace moaodv
