#pragma once

#include <cstddef>
#include <limits>

#include "moaodv/param_space.hpp"

namespace moaodv {

/// Bi-objective vector; both objectives are minimized.
/// For the AODV problem f1 = 100 - PDR (percent) and f2 = E2ED (ms).
struct ObjectiveVector {
  double f1 = 0.0;
  double f2 = 0.0;

  double operator[](std::size_t i) const { return i == 0 ? f1 : f2; }
  friend bool operator==(const ObjectiveVector&, const ObjectiveVector&) = default;
};

inline constexpr std::size_t kObjectiveCount = 2;

/// Pareto dominance for minimization.
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2);
}

inline bool weakly_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.f1 <= b.f1 && a.f2 <= b.f2;
}

struct EvaluatedSolution {
  Genome genome;
  ObjectiveVector objectives;
  std::size_t rank = 0;
  double crowding = 0.0;
};

inline constexpr double kInfiniteCrowding = std::numeric_limits<double>::infinity();

}  // namespace moaodv
