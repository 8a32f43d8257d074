#include "moaodv/experiment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "moaodv/stats.hpp"

namespace moaodv {

EngineKind parse_engine(const std::string& name) {
  if (name == "nsga2") return EngineKind::nsga2;
  if (name == "smpso") return EngineKind::smpso;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected nsga2 or smpso)");
}

std::string engine_name(EngineKind kind) { return kind == EngineKind::nsga2 ? "nsga2" : "smpso"; }

EngineConfig EngineConfig::defaults(EngineKind kind) {
  EngineConfig c;
  c.engine = kind;
  return c;
}

std::size_t EngineConfig::population() const {
  return engine == EngineKind::nsga2 ? nsga2.population_size : smpso.swarm_size;
}

void EngineConfig::set_population(std::size_t n) {
  nsga2.population_size = n;
  smpso.swarm_size = n;
  smpso.archive_capacity = n;
}

double EngineConfig::p_mutation() const {
  return engine == EngineKind::nsga2 ? nsga2.p_mutation : smpso.p_mutation;
}

void EngineConfig::set_p_mutation(double p) {
  if (engine == EngineKind::nsga2) {
    nsga2.p_mutation = p;
  } else {
    smpso.p_mutation = p;
  }
}

RunResult run_engine(const EngineConfig& config, const Evaluator& evaluator, WorkerPool& pool,
                     const RunOptions& options, std::uint64_t seed) {
  RandomSource rng(seed);
  if (config.engine == EngineKind::nsga2) return nsga2_run(config.nsga2, evaluator, pool, options, rng);
  return smpso_run(config.smpso, evaluator, pool, options, rng);
}

std::vector<ObjectiveVector> RunRecord::front_objectives() const {
  std::vector<ObjectiveVector> out;
  for (const auto& s : front) out.push_back(s.objectives);
  return out;
}

std::vector<Genome> RunRecord::front_genomes() const {
  std::vector<Genome> out;
  for (const auto& s : front) out.push_back(s.genome);
  return out;
}

std::vector<std::uint64_t> campaign_seeds(std::uint64_t base, std::size_t repetitions) {
  std::vector<std::uint64_t> seeds;
  const RandomSource root(base);
  for (std::size_t i = 0; i < repetitions; ++i) seeds.push_back(root.split(i).next_u64());
  return seeds;
}

std::vector<RunRecord> run_experiment(const EngineConfig& config, const Evaluator& evaluator,
                                      WorkerPool& pool, const StopCriterion& stop,
                                      std::size_t repetitions, std::span<const std::uint64_t> seeds,
                                      const BatchObserver& observer) {
  if (repetitions == 0) throw std::invalid_argument("run_experiment: repetitions must be positive");
  if (seeds.size() != repetitions) {
    throw std::invalid_argument("run_experiment: need exactly one seed per repetition");
  }
  if (!stop.hv_threshold && stop.max_generations == 0) {
    throw std::invalid_argument("stop criterion has neither a threshold nor a generation cap");
  }

  std::vector<RunRecord> records;
  for (std::size_t r = 0; r < repetitions; ++r) {
    RunRecord rec;
    rec.engine = config.engine;
    rec.seed = seeds[r];
    std::map<std::vector<double>, QosMetrics> metrics;
    RunOptions options;
    options.stop = stop;
    options.on_batch = [&](const EvaluationBatch& batch) {
      if (observer) observer(r, batch);
      for (std::size_t i = 0; i < batch.genomes.size(); ++i) {
        if (batch.metrics[i]) {
          const auto v = batch.genomes[i].values();
          metrics.emplace(std::vector<double>(v.begin(), v.end()), *batch.metrics[i]);
        }
      }
    };
    try {
      RunResult result = run_engine(config, evaluator, pool, options, seeds[r]);
      rec.generations_used = result.generations_used;
      rec.evaluations = result.evaluations;
      rec.wall_seconds = result.wall_seconds;
      rec.front = result.front.sorted_by_f1();
      for (const auto& s : rec.front) {
        const auto v = s.genome.values();
        const auto it = metrics.find(std::vector<double>(v.begin(), v.end()));
        rec.front_metrics.push_back(it == metrics.end() ? std::nullopt : std::optional(it->second));
      }
      rec.history = std::move(result.history);
      rec.final_hypervolume = rec.history.empty() ? 0.0 : rec.history.back().hypervolume;

      const Front own = Front::from_points(rec.front_objectives());
      const ReferenceFront ref = stop.reference ? *stop.reference
                                                : ReferenceFront{own, evaluator.default_bounds()};
      rec.indicators = compute_indicators(own, ref);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.error = e.what();
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::size_t select_compromise(std::span<const ObjectiveVector> front) {
  if (front.empty()) throw std::invalid_argument("select_compromise: empty front");
  double lo[2] = {front[0].f1, front[0].f2};
  double hi[2] = {front[0].f1, front[0].f2};
  for (const auto& p : front) {
    for (std::size_t k = 0; k < 2; ++k) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }
  }
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < front.size(); ++i) {
    double sq = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
      const double extent = hi[k] - lo[k];
      if (extent > 0.0) sq += std::pow((front[i][k] - lo[k]) / extent, 2.0);
    }
    const double d = std::sqrt(sq);
    if (d < best_distance || (d == best_distance && front[i].f1 < front[best].f1)) {
      best = i;
      best_distance = d;
    }
  }
  return best;
}

std::pair<Genome, ObjectiveVector> select_compromise(std::span<const ObjectiveVector> front,
                                                      std::span<const Genome> genomes) {
  if (front.size() != genomes.size()) {
    throw std::invalid_argument("select_compromise: front and genomes are not aligned");
  }
  const std::size_t i = select_compromise(front);
  return {genomes[i], front[i]};
}

std::vector<TuneCell> tune_sweep(const EngineConfig& base, const Evaluator& evaluator, WorkerPool& pool,
                                 std::span<const double> pc_grid, std::span<const double> pm_grid,
                                 std::size_t repetitions, std::size_t max_generations,
                                 std::uint64_t base_seed) {
  if (pm_grid.empty() || (base.engine == EngineKind::nsga2 && pc_grid.empty())) {
    throw std::invalid_argument("tune_sweep: empty candidate grid");
  }
  std::vector<TuneCell> cells;
  if (base.engine == EngineKind::nsga2) {
    for (double pc : pc_grid) {
      for (double pm : pm_grid) cells.push_back({pc, pm, 0.0, {}, false});
    }
  } else {
    for (double pm : pm_grid) cells.push_back({std::nullopt, pm, 0.0, {}, false});
  }

  // Every cell sees the same seeds so cells differ only in their settings.
  const auto seeds = campaign_seeds(base_seed, repetitions);
  const StopCriterion stop = StopCriterion::generations(max_generations);
  std::size_t best = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    EngineConfig config = base;
    if (cells[c].p_crossover) config.nsga2.p_crossover = *cells[c].p_crossover;
    config.set_p_mutation(cells[c].p_mutation);
    for (const auto& rec : run_experiment(config, evaluator, pool, stop, repetitions, seeds)) {
      if (rec.failed) throw std::runtime_error("tune_sweep: repetition failed: " + rec.error);
      cells[c].hypervolumes.push_back(rec.final_hypervolume);
    }
    cells[c].median_hypervolume = median(cells[c].hypervolumes);
    if (cells[c].median_hypervolume > cells[best].median_hypervolume) best = c;
  }
  cells[best].best = true;
  return cells;
}

void write_tune_csv(const std::string& path, const std::vector<TuneCell>& cells) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "p_crossover,p_mutation,median_hypervolume,best\n";
  for (const auto& c : cells) {
    if (c.p_crossover) out << *c.p_crossover;
    out << ',' << c.p_mutation << ',' << c.median_hypervolume << ',' << (c.best ? 1 : 0) << '\n';
  }
}

std::string run_metadata_json(const RunRecord& record, const EngineConfig& config,
                              const std::string& backend, std::size_t workers,
                              const StopCriterion& stop) {
  nlohmann::json j;
  j["algorithm"] = engine_name(record.engine);
  j["backend"] = backend;
  j["seed"] = record.seed;
  j["workers"] = workers;
  j["failed"] = record.failed;
  if (record.failed) j["error"] = record.error;
  nlohmann::json c;
  c["population"] = config.population();
  c["p_mutation"] = config.p_mutation();
  if (config.engine == EngineKind::nsga2) {
    c["p_crossover"] = config.nsga2.p_crossover;
  } else {
    c["archive_capacity"] = config.smpso.archive_capacity;
    c["inertia"] = config.smpso.inertia;
  }
  j["config"] = c;
  nlohmann::json s;
  s["max_generations"] = stop.max_generations;
  s["hv_threshold"] = stop.hv_threshold ? nlohmann::json(*stop.hv_threshold) : nlohmann::json(nullptr);
  s["reference_points"] = stop.reference ? stop.reference->points.size() : 0;
  j["stop"] = s;
  j["generations_used"] = record.generations_used;
  j["evaluations"] = record.evaluations;
  j["wall_seconds"] = record.wall_seconds;
  j["front_size"] = record.front.size();
  j["indicators"] = {{"hypervolume", record.indicators.hypervolume},
                     {"epsilon", record.indicators.epsilon},
                     {"spread", record.indicators.spread}};
  j["final_running_hypervolume"] = record.final_hypervolume;
  return j.dump(2);
}

}  // namespace moaodv
