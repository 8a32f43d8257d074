#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "moaodv/evaluator.hpp"
#include "moaodv/parallel_eval.hpp"

namespace moaodv {

/// Wraps another evaluator and sleeps a fixed time per call, standing in
/// for an expensive simulation when measuring the worker pool.
class DelayedEvaluator final : public Evaluator {
 public:
  DelayedEvaluator(const Evaluator& inner, std::chrono::microseconds delay)
      : inner_(inner), delay_(delay) {}

  Evaluation evaluate(const Genome& g) const override;
  const ParameterSpace& space() const override { return inner_.space(); }
  ObjectiveBounds default_bounds() const override { return inner_.default_bounds(); }
  std::string name() const override { return "delayed-" + inner_.name(); }

 private:
  const Evaluator& inner_;
  std::chrono::microseconds delay_;
};

/// Wall time of `batches` evaluations of `batch_size` random genomes each.
std::vector<double> time_batches(WorkerPool& pool, const Evaluator& evaluator, std::size_t batch_size,
                                 std::size_t batches, std::uint64_t seed);

}  // namespace moaodv
