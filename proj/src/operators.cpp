#include "moaodv/operators.hpp"

#include <stdexcept>

namespace moaodv {

std::vector<Genome> stratified_init(const ParameterSpace& space, std::size_t count,
                                    RandomSource& rng) {
  if (count == 0) throw std::invalid_argument("stratified_init: solution set size must be positive");
  std::vector<Genome> out;
  out.reserve(count);
  const auto slices = static_cast<double>(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double offset = rng.uniform();
    const double position = (static_cast<double>(k) + offset) / slices;
    std::vector<double> values(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto& s = space[i];
      values[i] = clamp_component(s, s.lower + position * s.range());
    }
    out.emplace_back(std::move(values));
  }
  return out;
}

double mutate_component(const ParameterSpec& spec, double value, double beta) {
  return clamp_component(spec, value + beta * spec.range());
}

Genome uniform_mutation(const ParameterSpace& space, Genome g, double p_mutation,
                        RandomSource& rng) {
  if (p_mutation < 0.0 || p_mutation > 1.0) {
    throw std::invalid_argument("mutation probability must lie in [0, 1]");
  }
  if (g.size() != space.size()) throw std::invalid_argument("uniform_mutation: genome size mismatch");
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!rng.bernoulli(p_mutation)) continue;
    const double beta = rng.uniform() - 0.5;
    g[i] = mutate_component(space[i], g[i], beta);
  }
  return g;
}

std::pair<Genome, Genome> arithmetic_recombination(const ParameterSpace& space, const Genome& p,
                                                   const Genome& q, double sigma) {
  if (p.size() != space.size() || q.size() != space.size()) {
    throw std::invalid_argument("arithmetic_recombination: genome size mismatch");
  }
  std::vector<double> a(space.size());
  std::vector<double> b(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    a[i] = clamp_component(space[i], sigma * p[i] + (1.0 - sigma) * q[i]);
    b[i] = clamp_component(space[i], (1.0 - sigma) * p[i] + sigma * q[i]);
  }
  return {Genome(std::move(a)), Genome(std::move(b))};
}

}  // namespace moaodv
