#include "moaodv/synthetic.hpp"

#include <thread>

#include "moaodv/operators.hpp"
#include "moaodv/random.hpp"

namespace moaodv {

Evaluation DelayedEvaluator::evaluate(const Genome& g) const {
  std::this_thread::sleep_for(delay_);
  return inner_.evaluate(g);
}

std::vector<double> time_batches(WorkerPool& pool, const Evaluator& evaluator, std::size_t batch_size,
                                 std::size_t batches, std::uint64_t seed) {
  RandomSource rng(seed);
  std::vector<double> times;
  for (std::size_t b = 0; b < batches; ++b) {
    EvaluationBatch batch = evaluate_batch(pool, evaluator, stratified_init(evaluator.space(), batch_size, rng));
    require_success(batch);
    times.push_back(batch.wall_seconds);
  }
  return times;
}

}  // namespace moaodv
