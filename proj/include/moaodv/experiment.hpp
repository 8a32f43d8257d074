#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "moaodv/indicators.hpp"
#include "moaodv/nsga2.hpp"
#include "moaodv/smpso.hpp"
#include "moaodv/stop.hpp"

namespace moaodv {

enum class EngineKind { nsga2, smpso };

EngineKind parse_engine(const std::string& name);
std::string engine_name(EngineKind kind);

struct EngineConfig {
  EngineKind engine = EngineKind::nsga2;
  Nsga2Config nsga2;
  SmpsoConfig smpso;

  static EngineConfig defaults(EngineKind kind);
  std::size_t population() const;
  void set_population(std::size_t n);
  double p_mutation() const;
  void set_p_mutation(double p);
};

/// Runs one independent search with its own random stream seeded by `seed`.
RunResult run_engine(const EngineConfig& config, const Evaluator& evaluator, WorkerPool& pool,
                     const RunOptions& options, std::uint64_t seed);

struct RunRecord {
  EngineKind engine = EngineKind::nsga2;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
  std::size_t generations_used = 0;
  std::size_t evaluations = 0;
  double wall_seconds = 0.0;
  /// Final running front, ascending f1, with the genomes that produced it.
  std::vector<EvaluatedSolution> front;
  /// QoS of each front member when the backend reports it, aligned with `front`.
  std::vector<std::optional<QosMetrics>> front_metrics;
  double final_hypervolume = 0.0;
  IndicatorTriple indicators{0.0, 0.0, 0.0};
  std::vector<GenerationRecord> history;

  std::vector<ObjectiveVector> front_objectives() const;
  std::vector<Genome> front_genomes() const;
};

/// Campaign seed i is RandomSource(base).split(i).next_u64(), so a whole
/// campaign is reproducible from one number.
std::vector<std::uint64_t> campaign_seeds(std::uint64_t base, std::size_t repetitions);

/// Runs `repetitions` independent searches sequentially. A repetition that
/// throws is recorded with `failed = true` and the campaign continues.
/// Indicators are computed against `stop.reference` when present, otherwise
/// against the run's own front in the evaluator's default bounds.
/// `observer`, if set, sees every evaluated batch with its repetition index.
using BatchObserver = std::function<void(std::size_t, const EvaluationBatch&)>;
std::vector<RunRecord> run_experiment(const EngineConfig& config, const Evaluator& evaluator,
                                      WorkerPool& pool, const StopCriterion& stop,
                                      std::size_t repetitions, std::span<const std::uint64_t> seeds,
                                      const BatchObserver& observer = {});

/// Index of the member closest to the ideal vector after normalizing each
/// objective by the front's extent. Ties go to the smaller f1.
std::size_t select_compromise(std::span<const ObjectiveVector> front);
std::pair<Genome, ObjectiveVector> select_compromise(std::span<const ObjectiveVector> front,
                                                      std::span<const Genome> genomes);

struct TuneCell {
  std::optional<double> p_crossover;  ///< unset for SMPSO
  double p_mutation = 0.0;
  double median_hypervolume = 0.0;
  std::vector<double> hypervolumes;
  bool best = false;
};

/// Median final hypervolume per (p_C, p_M) cell at a fixed generation
/// budget. SMPSO has no crossover, so its grid only spans p_M. Exactly one
/// cell (the first maximum) is flagged `best`.
std::vector<TuneCell> tune_sweep(const EngineConfig& base, const Evaluator& evaluator, WorkerPool& pool,
                                 std::span<const double> pc_grid, std::span<const double> pm_grid,
                                 std::size_t repetitions, std::size_t max_generations,
                                 std::uint64_t base_seed);

void write_tune_csv(const std::string& path, const std::vector<TuneCell>& cells);

/// Run metadata as JSON: seed, configuration, generations, wall time,
/// indicators and evaluation count.
std::string run_metadata_json(const RunRecord& record, const EngineConfig& config,
                              const std::string& backend, std::size_t workers,
                              const StopCriterion& stop);

}  // namespace moaodv
