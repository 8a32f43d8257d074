#pragma once

#include <cstddef>
#include <vector>

#include "moaodv/evaluator.hpp"
#include "moaodv/parallel_eval.hpp"
#include "moaodv/random.hpp"
#include "moaodv/stop.hpp"

namespace moaodv {

struct SmpsoConfig {
  std::size_t swarm_size = 24;
  std::size_t archive_capacity = 24;
  double p_mutation = 0.091;
  double c1_min = 1.5;
  double c1_max = 2.5;
  double c2_min = 1.5;
  double c2_max = 2.5;
  double inertia = 0.1;

  void validate() const;
};

struct Particle {
  Genome position;
  std::vector<double> velocity;
  EvaluatedSolution personal_best;
};

struct VelocityCoefficients {
  double inertia;
  double c1;
  double c2;
  double r1;
  double r2;
};

/// chi = 2 / |2 - phi - sqrt(phi^2 - 4 phi)| with phi = c1 + c2 when it
/// exceeds 4, otherwise phi = 0.
double constriction_coefficient(double c1, double c2);

/// Per-component speed limit: half the component's range.
std::vector<double> speed_limits(const ParameterSpace& space);

/// Constricted velocity update, clamped to +/- the speed limit.
void velocity_update(Particle& p, const Genome& leader, const VelocityCoefficients& k,
                     const ParameterSpace& space);

/// x += v. A component leaving the box is put on the bound and its
/// velocity is multiplied by -0.001. Integer components are rounded last.
void position_update(Particle& p, const ParameterSpace& space);

/// Binary tournament over the leaders archive preferring larger crowding.
/// Crowding must be current.
const EvaluatedSolution& select_leader(const ParetoArchive& leaders, RandomSource& rng);

/// Replaces the personal best when `s` dominates it, or with probability
/// 0.5 when neither dominates the other. Returns true on replacement.
bool update_personal_best(Particle& p, const EvaluatedSolution& s, RandomSource& rng);

/// Master loop of the parallel SMPSO.
RunResult smpso_run(const SmpsoConfig& config, const Evaluator& evaluator, WorkerPool& pool,
                    const RunOptions& options, RandomSource& rng);

}  // namespace moaodv
