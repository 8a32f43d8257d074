#pragma once

#include <cstddef>
#include <span>

#include "moaodv/evaluator.hpp"
#include "moaodv/parallel_eval.hpp"
#include "moaodv/random.hpp"
#include "moaodv/stop.hpp"

namespace moaodv {

struct Nsga2Config {
  std::size_t population_size = 24;
  double p_crossover = 0.9;
  double p_mutation = 0.023;

  void validate() const;
};

/// Draws two distinct members; lower rank wins, then larger crowding, then
/// the first drawn.
const EvaluatedSolution& binary_tournament_select(std::span<const EvaluatedSolution> pop,
                                                  RandomSource& rng);

/// Master loop of the parallel NSGA-II. Only the batch evaluations run on
/// the pool; every random draw happens here, so the search trajectory does
/// not depend on the number of workers.
RunResult nsga2_run(const Nsga2Config& config, const Evaluator& evaluator, WorkerPool& pool,
                    const RunOptions& options, RandomSource& rng);

}  // namespace moaodv
