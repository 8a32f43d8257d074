#include "moaodv/nsga2.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "moaodv/operators.hpp"

namespace moaodv {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<EvaluatedSolution> to_solutions(const EvaluationBatch& batch) {
  std::vector<EvaluatedSolution> out;
  out.reserve(batch.genomes.size());
  for (std::size_t i = 0; i < batch.genomes.size(); ++i) {
    out.push_back({batch.genomes[i], batch.results[i], 0, 0.0});
  }
  return out;
}

std::vector<ObjectiveVector> objectives_of(std::span<const EvaluatedSolution> pop) {
  std::vector<ObjectiveVector> out;
  out.reserve(pop.size());
  for (const auto& s : pop) out.push_back(s.objectives);
  return out;
}

}  // namespace

void Nsga2Config::validate() const {
  if (population_size < 2 || population_size % 2 != 0) {
    throw std::invalid_argument("NSGA-II population size must be even and at least 2");
  }
  if (p_crossover < 0.0 || p_crossover > 1.0) throw std::invalid_argument("p_C must lie in [0, 1]");
  if (p_mutation < 0.0 || p_mutation > 1.0) throw std::invalid_argument("p_M must lie in [0, 1]");
}

const EvaluatedSolution& binary_tournament_select(std::span<const EvaluatedSolution> pop,
                                                  RandomSource& rng) {
  if (pop.size() < 2) throw std::invalid_argument("binary tournament needs at least two members");
  const std::size_t a = rng.uniform_index(pop.size());
  std::size_t b = rng.uniform_index(pop.size() - 1);
  if (b >= a) ++b;
  const auto& first = pop[a];
  const auto& second = pop[b];
  if (second.rank < first.rank) return second;
  if (second.rank == first.rank && second.crowding > first.crowding) return second;
  return first;
}

RunResult nsga2_run(const Nsga2Config& config, const Evaluator& evaluator, WorkerPool& pool,
                    const RunOptions& options, RandomSource& rng) {
  config.validate();
  const auto& space = evaluator.space();
  const std::size_t n = config.population_size;
  const ObjectiveBounds bounds = options.stop.bounds_or(evaluator.default_bounds());
  const auto started = Clock::now();

  RunResult result;
  const auto evaluate = [&](std::vector<Genome> genomes) {
    EvaluationBatch batch = evaluate_batch(pool, evaluator, std::move(genomes));
    require_success(batch);
    if (options.on_batch) options.on_batch(batch);
    result.evaluations += batch.genomes.size();
    auto solutions = to_solutions(batch);
    for (const auto& s : solutions) result.front.insert(s);
    return solutions;
  };
  const auto record = [&](std::size_t generation, std::span<const EvaluatedSolution> pop) {
    GenerationRecord r;
    r.generation = generation;
    r.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    r.front = result.front.objectives_sorted();
    r.hypervolume = normalized_hypervolume(r.front, bounds);
    r.population = objectives_of(pop);
    result.history.push_back(std::move(r));
    return result.history.back().hypervolume;
  };

  std::vector<EvaluatedSolution> population = evaluate(stratified_init(space, n, rng));
  ranking_and_crowding(population);
  record(0, population);

  const auto advance = [&](std::size_t generation) {
    std::vector<Genome> offspring;
    offspring.reserve(n);
    for (std::size_t i = 0; i < n / 2; ++i) {
      const Genome& p = binary_tournament_select(population, rng).genome;
      const Genome& q = binary_tournament_select(population, rng).genome;
      std::pair<Genome, Genome> children{p, q};
      if (rng.bernoulli(config.p_crossover)) {
        children = arithmetic_recombination(space, p, q, rng.uniform());
      }
      offspring.push_back(uniform_mutation(space, std::move(children.first), config.p_mutation, rng));
      offspring.push_back(uniform_mutation(space, std::move(children.second), config.p_mutation, rng));
    }

    std::vector<EvaluatedSolution> merged = std::move(population);
    auto evaluated = evaluate(std::move(offspring));
    merged.insert(merged.end(), std::make_move_iterator(evaluated.begin()),
                  std::make_move_iterator(evaluated.end()));
    ranking_and_crowding(merged);

    std::vector<std::size_t> order(merged.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (merged[a].rank != merged[b].rank) return merged[a].rank < merged[b].rank;
      return merged[a].crowding > merged[b].crowding;
    });
    population.clear();
    population.reserve(n);
    for (std::size_t i = 0; i < n; ++i) population.push_back(std::move(merged[order[i]]));
    return record(generation, population);
  };

  result.generations_used = run_until(options.stop, advance);
  result.population = std::move(population);
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return result;
}

}  // namespace moaodv
