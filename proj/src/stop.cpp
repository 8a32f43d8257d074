#include "moaodv/stop.hpp"

namespace moaodv {

std::size_t run_until(const StopCriterion& stop, const std::function<double(std::size_t)>& advance) {
  std::size_t generation = 0;
  while (generation < stop.max_generations) {
    ++generation;
    const double hv = advance(generation);
    if (stop.threshold_met(hv)) break;
  }
  return generation;
}

}  // namespace moaodv
