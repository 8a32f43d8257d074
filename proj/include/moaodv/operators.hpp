#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "moaodv/param_space.hpp"
#include "moaodv/random.hpp"

namespace moaodv {

/// Places genome k in the k-th of `count` diagonal slices of the box:
/// component i = lower_i + ((k + u_k) / count) * range_i, with one offset
/// u_k in [0, 1) shared by all components of genome k.
std::vector<Genome> stratified_init(const ParameterSpace& space, std::size_t count,
                                    RandomSource& rng);

/// Moves one component by beta * range and clamps it back into the box.
double mutate_component(const ParameterSpec& spec, double value, double beta);

/// Each component is moved with probability `p_mutation` by
/// beta * range, beta uniform in [-0.5, 0.5]; the result is clamped.
Genome uniform_mutation(const ParameterSpace& space, Genome g, double p_mutation,
                        RandomSource& rng);

/// Whole arithmetic crossover with weight sigma in [0, 1].
std::pair<Genome, Genome> arithmetic_recombination(const ParameterSpace& space, const Genome& p,
                                                   const Genome& q, double sigma);

}  // namespace moaodv
