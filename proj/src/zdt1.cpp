#include "moaodv/zdt1.hpp"

#include <cmath>
#include <stdexcept>

namespace moaodv {

ObjectiveVector zdt1_eval(std::span<const double> x) {
  if (x.size() < 2) throw std::invalid_argument("zdt1 needs at least two variables");
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::domain_error("zdt1 variable outside [0, 1]");
  }
  double tail = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) tail += x[i];
  const double g = 1.0 + 9.0 * tail / static_cast<double>(x.size() - 1);
  const double f1 = x[0];
  return {f1, g * (1.0 - std::sqrt(f1 / g))};
}

Zdt1Evaluator::Zdt1Evaluator(std::size_t variables) : space_(ParameterSpace::unit_box(variables)) {
  if (variables < 2) throw std::invalid_argument("zdt1 needs at least two variables");
}

Evaluation Zdt1Evaluator::evaluate(const Genome& g) const {
  return {zdt1_eval(g.values()), std::nullopt};
}

}  // namespace moaodv
