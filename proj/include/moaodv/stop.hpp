#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "moaodv/evaluator.hpp"
#include "moaodv/indicators.hpp"
#include "moaodv/pareto.hpp"

namespace moaodv {

struct EvaluationBatch;

/// Halts a run when the running front's hypervolume reaches the threshold
/// (inclusive) or after `max_generations` generations, whichever comes first.
struct StopCriterion {
  std::optional<double> hv_threshold;
  std::size_t max_generations = 450;
  std::optional<ReferenceFront> reference;

  static StopCriterion generations(std::size_t n) { return {std::nullopt, n, std::nullopt}; }

  bool threshold_met(double hypervolume) const {
    return hv_threshold.has_value() && hypervolume >= *hv_threshold;
  }
  /// Bounds used to normalize fronts for the hypervolume check.
  ObjectiveBounds bounds_or(const ObjectiveBounds& fallback) const {
    return reference ? reference->bounds : fallback;
  }
};

/// Drives generations 1, 2, ... through `advance`, which performs one
/// generation and returns the hypervolume after it. Returns the number of
/// generations performed.
std::size_t run_until(const StopCriterion& stop, const std::function<double(std::size_t)>& advance);

struct GenerationRecord {
  std::size_t generation = 0;
  double elapsed_seconds = 0.0;
  double hypervolume = 0.0;
  /// Running non-dominated set after this generation, ascending f1.
  std::vector<ObjectiveVector> front;
  /// Population (NSGA-II) or swarm positions (SMPSO) objectives, in order.
  std::vector<ObjectiveVector> population;
};

struct RunOptions {
  StopCriterion stop = StopCriterion::generations(450);
  /// Called after every batch evaluation on the master thread.
  std::function<void(const EvaluationBatch&)> on_batch;
};

struct RunResult {
  /// Every non-dominated solution evaluated during the run.
  ParetoArchive front{ParetoArchive::kUnbounded};
  /// Final population, or final leaders archive for SMPSO.
  std::vector<EvaluatedSolution> population;
  std::vector<GenerationRecord> history;
  std::size_t generations_used = 0;
  std::size_t evaluations = 0;
  double wall_seconds = 0.0;
};

}  // namespace moaodv
