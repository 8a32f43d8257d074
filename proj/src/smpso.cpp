#include "moaodv/smpso.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "moaodv/operators.hpp"

namespace moaodv {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kBounceDamping = -0.001;

}  // namespace

void SmpsoConfig::validate() const {
  if (swarm_size == 0) throw std::invalid_argument("swarm size must be positive");
  if (archive_capacity == 0) throw std::invalid_argument("archive capacity must be positive");
  if (p_mutation < 0.0 || p_mutation > 1.0) throw std::invalid_argument("p_M must lie in [0, 1]");
  if (c1_min < 0.0 || c1_max < c1_min || c2_min < 0.0 || c2_max < c2_min) {
    throw std::invalid_argument("invalid acceleration coefficient ranges");
  }
}

double constriction_coefficient(double c1, double c2) {
  const double sum = c1 + c2;
  const double phi = sum > 4.0 ? sum : 0.0;
  return 2.0 / std::abs(2.0 - phi - std::sqrt(phi * phi - 4.0 * phi));
}

std::vector<double> speed_limits(const ParameterSpace& space) {
  std::vector<double> delta(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) delta[i] = space[i].range() / 2.0;
  return delta;
}

void velocity_update(Particle& p, const Genome& leader, const VelocityCoefficients& k,
                     const ParameterSpace& space) {
  const double chi = constriction_coefficient(k.c1, k.c2);
  const Genome& best = p.personal_best.genome;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const double x = p.position[i];
    double v = chi * (k.inertia * p.velocity[i] + k.c1 * k.r1 * (best[i] - x) +
                      k.c2 * k.r2 * (leader[i] - x));
    const double delta = space[i].range() / 2.0;
    if (v > delta) v = delta;
    if (v < -delta) v = -delta;
    p.velocity[i] = v;
  }
}

void position_update(Particle& p, const ParameterSpace& space) {
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto& s = space[i];
    double x = p.position[i] + p.velocity[i];
    if (x > s.upper) {
      x = s.upper;
      p.velocity[i] *= kBounceDamping;
    } else if (x < s.lower) {
      x = s.lower;
      p.velocity[i] *= kBounceDamping;
    }
    p.position[i] = x;
  }
  for (std::size_t i = 0; i < space.size(); ++i) {
    p.position[i] = clamp_component(space[i], p.position[i]);
  }
}

const EvaluatedSolution& select_leader(const ParetoArchive& leaders, RandomSource& rng) {
  if (leaders.empty()) throw std::invalid_argument("leaders archive is empty");
  if (leaders.size() == 1) return leaders[0];
  const std::size_t a = rng.uniform_index(leaders.size());
  std::size_t b = rng.uniform_index(leaders.size() - 1);
  if (b >= a) ++b;
  return leaders[b].crowding > leaders[a].crowding ? leaders[b] : leaders[a];
}

bool update_personal_best(Particle& p, const EvaluatedSolution& s, RandomSource& rng) {
  const auto& pbest = p.personal_best.objectives;
  if (dominates(s.objectives, pbest)) {
    p.personal_best = s;
    return true;
  }
  if (!dominates(pbest, s.objectives) && rng.bernoulli(0.5)) {
    p.personal_best = s;
    return true;
  }
  return false;
}

RunResult smpso_run(const SmpsoConfig& config, const Evaluator& evaluator, WorkerPool& pool,
                    const RunOptions& options, RandomSource& rng) {
  config.validate();
  const auto& space = evaluator.space();
  const ObjectiveBounds bounds = options.stop.bounds_or(evaluator.default_bounds());
  const auto started = Clock::now();

  RunResult result;
  ParetoArchive leaders(config.archive_capacity);
  std::vector<Particle> swarm;
  std::vector<ObjectiveVector> current(config.swarm_size);

  const auto evaluate = [&](std::vector<Genome> genomes) {
    EvaluationBatch batch = evaluate_batch(pool, evaluator, std::move(genomes));
    require_success(batch);
    if (options.on_batch) options.on_batch(batch);
    result.evaluations += batch.genomes.size();
    return batch;
  };
  const auto record = [&](std::size_t generation) {
    GenerationRecord r;
    r.generation = generation;
    r.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    r.front = result.front.objectives_sorted();
    r.hypervolume = normalized_hypervolume(r.front, bounds);
    r.population = current;
    result.history.push_back(std::move(r));
    return result.history.back().hypervolume;
  };

  {
    EvaluationBatch batch = evaluate(stratified_init(space, config.swarm_size, rng));
    swarm.reserve(config.swarm_size);
    for (std::size_t i = 0; i < config.swarm_size; ++i) {
      EvaluatedSolution s{batch.genomes[i], batch.results[i], 0, 0.0};
      swarm.push_back({s.genome, std::vector<double>(space.size(), 0.0), s});
      current[i] = s.objectives;
      leaders.insert(s);
      result.front.insert(s);
    }
  }
  record(0);

  const auto advance = [&](std::size_t generation) {
    leaders.refresh_crowding();
    std::vector<Genome> positions;
    positions.reserve(swarm.size());
    for (auto& particle : swarm) {
      const Genome leader = select_leader(leaders, rng).genome;
      VelocityCoefficients k{config.inertia, 0, 0, 0, 0};
      k.r1 = rng.uniform();
      k.r2 = rng.uniform();
      k.c1 = rng.uniform(config.c1_min, config.c1_max);
      k.c2 = rng.uniform(config.c2_min, config.c2_max);
      velocity_update(particle, leader, k, space);
      position_update(particle, space);
      particle.position = uniform_mutation(space, std::move(particle.position), config.p_mutation, rng);
      positions.push_back(particle.position);
    }

    EvaluationBatch batch = evaluate(std::move(positions));
    for (std::size_t i = 0; i < swarm.size(); ++i) {
      auto& particle = swarm[i];
      EvaluatedSolution s{batch.genomes[i], batch.results[i], 0, 0.0};
      current[i] = s.objectives;
      update_personal_best(particle, s, rng);
      leaders.insert(s);
      result.front.insert(s);
    }
    return record(generation);
  };

  result.generations_used = run_until(options.stop, advance);
  leaders.refresh_crowding();
  result.population.assign(leaders.members().begin(), leaders.members().end());
  result.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
  return result;
}

}  // namespace moaodv
