#pragma once

#include <span>

#include "moaodv/evaluator.hpp"

namespace moaodv {

/// f1 = x1, g = 1 + 9 * sum(x2..xn) / (n - 1), f2 = g * (1 - sqrt(f1 / g)).
ObjectiveVector zdt1_eval(std::span<const double> x);

/// Known-front benchmark used to verify the engines.
class Zdt1Evaluator final : public Evaluator {
 public:
  explicit Zdt1Evaluator(std::size_t variables = 30);

  Evaluation evaluate(const Genome& g) const override;
  const ParameterSpace& space() const override { return space_; }
  ObjectiveBounds default_bounds() const override { return {0.0, 1.0, 0.0, 1.0}; }
  std::string name() const override { return "zdt1"; }

 private:
  ParameterSpace space_;
};

}  // namespace moaodv
