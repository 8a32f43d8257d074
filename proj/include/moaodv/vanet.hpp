#pragma once

#include <cstddef>
#include <vector>

#include "moaodv/evaluator.hpp"
#include "moaodv/scenario.hpp"

namespace moaodv {

/// Piecewise-linear node trajectories, generated once per scenario.
class MobilityTrace {
 public:
  MobilityTrace(const ScenarioConfig& scenario, double horizon);

  Position at(std::size_t node, double t) const;
  std::size_t node_count() const { return legs_.size(); }

 private:
  struct Leg {
    double t0;
    double t1;
    Position from;
    Position to;
  };
  std::vector<std::vector<Leg>> legs_;
};

/// Radio and protocol constants of the surrogate.
namespace radio {
inline constexpr double kChannelBitsPerSecond = 2.0e6;
inline constexpr double kHopLatency = 1.0e-3;       ///< fixed per-hop processing, s
inline constexpr double kSlotTime = 20.0e-6;        ///< backoff slot, s
inline constexpr std::size_t kMinContentionWindow = 32;
inline constexpr std::size_t kMacAttempts = 4;      ///< unicast tries before a link break
inline constexpr double kMaxBacklog = 0.1;          ///< drop-tail once a node's queue exceeds this, s
inline constexpr double kBufferTimeout = 30.0;      ///< max wait for a route, s
inline constexpr double kDrain = 5.0;               ///< simulated time after traffic stops, s
inline constexpr std::size_t kHelloBytes = 20;
inline constexpr std::size_t kRreqBytes = 24;
inline constexpr std::size_t kRrepBytes = 20;
inline constexpr std::size_t kRerrBytes = 12;
}  // namespace radio

struct SimulationReport {
  QosMetrics metrics;
  std::size_t generated = 0;
  std::size_t delivered = 0;
  std::size_t control_packets = 0;
  std::size_t hello_packets = 0;
  std::size_t rreq_packets = 0;
  std::size_t rrep_packets = 0;
  std::size_t rerr_packets = 0;
  std::size_t dropped = 0;
  std::size_t discoveries = 0;
  std::size_t discovery_failures = 0;
  std::size_t link_breaks = 0;
  /// Delay of every delivered packet in delivery order, ms.
  std::vector<double> delays_ms;
};

/// Runs one discrete-event simulation of AODV over the scenario with the
/// genome's 11 parameters. Deterministic in (scenario, genome).
SimulationReport simulate_vanet_report(const ScenarioConfig& scenario, const MobilityTrace& trace,
                                       const Genome& g);
SimulationReport simulate_vanet_report(const ScenarioConfig& scenario, const Genome& g);
QosMetrics simulate_vanet(const ScenarioConfig& scenario, const Genome& g);

/// f1 = 100 - PDR, f2 = E2ED in ms.
ObjectiveVector objectives_from_metrics(const QosMetrics& m);

class VanetEvaluator final : public Evaluator {
 public:
  explicit VanetEvaluator(ScenarioConfig scenario);

  Evaluation evaluate(const Genome& g) const override;
  const ParameterSpace& space() const override { return space_; }
  /// f1 in [0, 100]; f2 between 0 and the zero-delivery penalty.
  ObjectiveBounds default_bounds() const override;
  std::string name() const override { return "vanet"; }

  const ScenarioConfig& scenario() const { return scenario_; }

 private:
  ScenarioConfig scenario_;
  MobilityTrace trace_;
  ParameterSpace space_;
};

}  // namespace moaodv
