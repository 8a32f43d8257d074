#pragma once

#include <optional>
#include <string>

#include "moaodv/objectives.hpp"
#include "moaodv/param_space.hpp"

namespace moaodv {

/// Aggregate QoS of one simulation run.
struct QosMetrics {
  double pdr = 0.0;   ///< percent of generated data packets delivered, [0, 100]
  double e2ed = 0.0;  ///< mean end-to-end delay of delivered packets, ms
  double nrl = 0.0;   ///< control transmissions per delivered data packet

  friend bool operator==(const QosMetrics&, const QosMetrics&) = default;
};

struct Evaluation {
  ObjectiveVector objectives;
  std::optional<QosMetrics> metrics;
};

/// Per-objective (min, max) box used to normalize fronts.
struct ObjectiveBounds {
  double f1_min = 0.0;
  double f1_max = 1.0;
  double f2_min = 0.0;
  double f2_max = 1.0;
};

/// Fitness backend. `evaluate` must be a pure function of the genome and
/// safe to call concurrently from several threads.
class Evaluator {
 public:
  virtual ~Evaluator() = default;

  virtual Evaluation evaluate(const Genome& g) const = 0;
  virtual const ParameterSpace& space() const = 0;
  /// Normalization box used when no reference front is supplied.
  virtual ObjectiveBounds default_bounds() const = 0;
  virtual std::string name() const = 0;
};

}  // namespace moaodv
