// Command-line front end: optimization runs, tuning sweeps, indicators,
// statistics, compromise selection and the worker-pool benchmark.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "moaodv/csv.hpp"
#include "moaodv/experiment.hpp"
#include "moaodv/indicators.hpp"
#include "moaodv/parallel_eval.hpp"
#include "moaodv/scenario.hpp"
#include "moaodv/stats.hpp"
#include "moaodv/synthetic.hpp"
#include "moaodv/vanet.hpp"
#include "moaodv/zdt1.hpp"

namespace fs = std::filesystem;
using namespace moaodv;

namespace {

struct BackendOptions {
  std::string backend = "vanet";
  std::string scenario_path;
  std::optional<double> duration;
  std::size_t zdt1_variables = 30;
};

void add_backend_options(CLI::App* cmd, BackendOptions& b) {
  cmd->add_option("--backend", b.backend, "Fitness backend")->check(CLI::IsMember({"vanet", "zdt1"}));
  cmd->add_option("--scenario", b.scenario_path, "Scenario file (VANET backend; default preset if omitted)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--duration", b.duration, "Override the simulated traffic duration, s");
  cmd->add_option("--variables", b.zdt1_variables, "ZDT1 decision variables");
}

std::unique_ptr<Evaluator> make_evaluator(const BackendOptions& b) {
  if (b.backend == "zdt1") return std::make_unique<Zdt1Evaluator>(b.zdt1_variables);
  ScenarioConfig sc = b.scenario_path.empty() ? scenarios::default_scenario() : load_scenario(b.scenario_path);
  if (b.duration) sc.duration = *b.duration;
  sc.validate();
  return std::make_unique<VanetEvaluator>(std::move(sc));
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + text + "'");
  return out;
}

ReferenceFront load_reference(const std::string& path) {
  const auto points = read_front_csv(path);
  const std::vector<Front> fronts{Front::from_points(points)};
  return merge_reference_front(fronts);
}

void write_metrics_csv(const std::string& path, const RunRecord& rec) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.precision(17);
  out << "pdr,e2ed_ms,nrl\n";
  for (const auto& m : rec.front_metrics) {
    if (m) out << m->pdr << ',' << m->e2ed << ',' << m->nrl << '\n';
    else out << ",,\n";
  }
}

// -- optimize -----------------------------------------------------------------

struct OptimizeOptions {
  std::string algorithm = "nsga2";
  BackendOptions backend;
  std::optional<std::size_t> pop;
  std::size_t max_gens = 450;
  std::optional<double> hv_threshold;
  std::string reference;
  std::uint64_t seed = 1;
  std::size_t reps = 1;
  std::size_t workers = 1;
  std::string out;
  std::optional<double> pc;
  std::optional<double> pm;
  bool quiet = false;
  bool trace_metrics = false;
};

int run_optimize(const OptimizeOptions& o) {
  auto evaluator = make_evaluator(o.backend);
  EngineConfig config = EngineConfig::defaults(parse_engine(o.algorithm));
  if (o.pop) config.set_population(*o.pop);
  if (o.pc) config.nsga2.p_crossover = *o.pc;
  if (o.pm) config.set_p_mutation(*o.pm);

  StopCriterion stop = StopCriterion::generations(o.max_gens);
  if (!o.reference.empty()) {
    stop.reference = load_reference(o.reference);
    stop.hv_threshold = o.hv_threshold.value_or(0.785);
  } else {
    stop.hv_threshold = o.hv_threshold;
  }

  const auto seeds = o.reps == 1 ? std::vector<std::uint64_t>{o.seed} : campaign_seeds(o.seed, o.reps);
  fs::create_directories(o.out);
  std::ofstream trace;
  BatchObserver observer;
  if (o.trace_metrics) {
    trace.open(fs::path(o.out) / "evaluations.csv");
    trace.precision(17);
    trace << "repetition,f1,f2,pdr,e2ed_ms,nrl\n";
    observer = [&](std::size_t rep, const EvaluationBatch& batch) {
      for (std::size_t i = 0; i < batch.genomes.size(); ++i) {
        trace << rep << ',' << batch.results[i].f1 << ',' << batch.results[i].f2;
        if (const auto& m = batch.metrics[i]) trace << ',' << m->pdr << ',' << m->e2ed << ',' << m->nrl;
        else trace << ",,,";
        trace << '\n';
      }
    };
  }
  WorkerPool pool({o.workers, true});
  const auto records = run_experiment(config, *evaluator, pool, stop, o.reps, seeds, observer);

  int status = 0;
  for (std::size_t r = 0; r < records.size(); ++r) {
    const auto& rec = records[r];
    const fs::path dir = o.reps == 1 ? fs::path(o.out) : fs::path(o.out) / ("run_" + std::to_string(r));
    fs::create_directories(dir);
    std::ofstream(dir / "run.json") << run_metadata_json(rec, config, evaluator->name(), o.workers, stop) << '\n';
    if (rec.failed) {
      std::cerr << "repetition " << r << " (seed " << rec.seed << ") failed: " << rec.error << '\n';
      status = 1;
      continue;
    }
    write_front_csv((dir / "front.csv").string(), rec.front_objectives());
    write_genomes_csv((dir / "genomes.csv").string(), evaluator->space(), rec.front_genomes());
    write_history_csv((dir / "history.csv").string(), rec.history);
    if (evaluator->name() == "vanet") write_metrics_csv((dir / "metrics.csv").string(), rec);
    if (!o.quiet) {
      std::printf("run %zu seed %llu: %zu generations, %zu evaluations, %.2f s, front %zu, HV %.6f\n", r,
                  static_cast<unsigned long long>(rec.seed), rec.generations_used, rec.evaluations,
                  rec.wall_seconds, rec.front.size(), rec.final_hypervolume);
    }
  }
  return status;
}

// -- tune ---------------------------------------------------------------------

struct TuneOptions {
  std::string algorithm = "nsga2";
  BackendOptions backend;
  std::string pc_grid = "0.3,0.5,0.7,0.9";
  std::string pm_grid = "0.023,0.045,0.091,0.182";
  std::size_t reps = 10;
  std::size_t max_gens = 50;
  std::optional<std::size_t> pop;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string out;
};

int run_tune(const TuneOptions& o) {
  auto evaluator = make_evaluator(o.backend);
  EngineConfig config = EngineConfig::defaults(parse_engine(o.algorithm));
  if (o.pop) config.set_population(*o.pop);
  const auto pcs = parse_list(o.pc_grid);
  const auto pms = parse_list(o.pm_grid);
  WorkerPool pool({o.workers, true});
  const auto cells = tune_sweep(config, *evaluator, pool, pcs, pms, o.reps, o.max_gens, o.seed);
  std::printf("p_crossover,p_mutation,median_hypervolume,best\n");
  for (const auto& c : cells) {
    if (c.p_crossover) std::printf("%g", *c.p_crossover);
    std::printf(",%g,%.6f,%d\n", c.p_mutation, c.median_hypervolume, c.best ? 1 : 0);
  }
  if (!o.out.empty()) write_tune_csv(o.out, cells);
  return 0;
}

// -- indicators / stats / select ----------------------------------------------

int run_indicators(const std::string& front_path, const std::string& reference_path) {
  const ReferenceFront ref = load_reference(reference_path);
  const Front f = Front::from_points(read_front_csv(front_path));
  const IndicatorTriple t = compute_indicators(f, ref);
  std::printf("hypervolume,epsilon,spread\n%.10g,%.10g,%.10g\n", t.hypervolume, t.epsilon, t.spread);
  return 0;
}

int run_wilcoxon(const std::string& a_path, const std::string& b_path) {
  const auto a = read_sample_csv(a_path);
  const auto b = read_sample_csv(b_path);
  const WilcoxonResult w = wilcoxon_signed_rank(a, b);
  if (w.degenerate) {
    std::printf("degenerate: all paired differences are zero\n");
    return 0;
  }
  std::printf("n,r_plus,r_minus,p_value,method\n%zu,%g,%g,%.10g,%s\n", w.n, w.r_plus, w.r_minus, w.p_value,
              w.exact ? "exact" : "normal");
  return 0;
}

int run_friedman(const std::string& matrix_path) {
  const CsvTable t = read_csv(matrix_path);
  const FriedmanResult f = friedman_rank(t.rows);
  std::printf("treatment,mean_rank\n");
  for (std::size_t j = 0; j < f.mean_ranks.size(); ++j) {
    const std::string name = j < t.header.size() ? t.header[j] : std::to_string(j);
    std::printf("%s,%.6f\n", name.c_str(), f.mean_ranks[j]);
  }
  std::printf("chi_square,%.10g\np_value,%.10g\n", f.chi_square, f.p_value);
  return 0;
}

int run_select(const std::string& front_path, const std::string& genomes_path) {
  const auto front = read_front_csv(front_path);
  const CsvTable genomes = read_csv(genomes_path);
  std::vector<Genome> gs;
  for (const auto& r : genomes.rows) gs.emplace_back(r);
  const auto [g, obj] = select_compromise(front, gs);
  std::printf("f1,f2");
  for (const auto& h : genomes.header) std::printf(",%s", h.c_str());
  std::printf("\n%.17g,%.17g", obj.f1, obj.f2);
  for (double v : g) std::printf(",%.17g", v);
  std::printf("\n");
  if (genomes.header.size() == aodv::kParameterCount && !validate_genome(ParameterSpace::aodv(), g)) {
    std::cerr << "selected genome violates the AODV parameter bounds\n";
    return 1;
  }
  return 0;
}

// -- bench-parallel -------------------------------------------------------------

int run_bench(const std::string& workers_list, double delay_ms, std::size_t batch, std::size_t batches) {
  const Zdt1Evaluator base(30);
  const DelayedEvaluator delayed(base, std::chrono::microseconds(static_cast<long long>(delay_ms * 1000.0)));
  std::vector<std::size_t> workers;
  for (double w : parse_list(workers_list)) workers.push_back(static_cast<std::size_t>(w));

  WorkerPool serial({1, true});
  const auto t1 = time_batches(serial, delayed, batch, batches, 1);
  std::printf("workers,mean_batch_seconds,speedup,efficiency\n");
  for (std::size_t m : workers) {
    std::vector<double> tm = t1;
    if (m != 1) {
      WorkerPool pool({m, true});
      tm = time_batches(pool, delayed, batch, batches, 1);
    }
    const Efficiency e = measure_efficiency(tm, t1, m);
    double mean = 0.0;
    for (double t : tm) mean += t;
    mean /= static_cast<double>(tm.size());
    std::printf("%zu,%.6f,%.4f,%.4f\n", m, mean, e.speedup, e.efficiency);
  }
  return 0;
}

// -- scenario / validate --------------------------------------------------------

ScenarioConfig preset(const std::string& name, std::uint64_t seed) {
  if (name == "default") return scenarios::default_scenario(seed);
  if (name == "two-node") return scenarios::two_node(true);
  if (name == "partitioned") return scenarios::two_node(false);
  if (name == "chain3") return scenarios::chain3();
  throw std::invalid_argument("unknown preset '" + name + "'");
}

/// Configurations reported for the two multi-objective tuners, plus RFC.
std::vector<std::pair<std::string, Genome>> fixture_genomes() {
  return {
      {"rfc", aodv::rfc_defaults()},
      {"nsga2", Genome{10.46, 10.55, 20.42, 6.89, 41.13, 21, 6, 6, 7, 3, 19}},
      {"smpso", Genome{3.94, 2.14, 8.06, 10.00, 40.62, 24, 1, 1, 19, 8, 5}},
  };
}

int run_validate(std::uint64_t base_seed, double duration, const std::string& genomes_path,
                 std::size_t workers) {
  auto configs = fixture_genomes();
  if (!genomes_path.empty()) {
    const auto extra = read_genomes_csv(genomes_path);
    for (std::size_t i = 0; i < extra.size(); ++i) configs.emplace_back("custom" + std::to_string(i), extra[i]);
  }
  const auto set = scenarios::validation_set(base_seed);
  const std::size_t k = configs.size();
  std::vector<std::vector<QosMetrics>> results(set.size(), std::vector<QosMetrics>(k));

  WorkerPool pool({workers, true});
  const auto errors = pool.run(set.size() * k, [&](std::size_t idx) {
    ScenarioConfig sc = set[idx / k].config;
    sc.duration = duration;
    results[idx / k][idx % k] = simulate_vanet(sc, configs[idx % k].second);
  });
  if (!errors.empty()) {
    std::rethrow_exception(errors.front().second);
  }

  std::printf("scenario,config,pdr,e2ed_ms,nrl\n");
  for (std::size_t s = 0; s < set.size(); ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      const auto& m = results[s][j];
      std::printf("%s,%s,%.4f,%.4f,%.4f\n", set[s].config.name.c_str(), configs[j].first.c_str(), m.pdr,
                  m.e2ed, m.nrl);
    }
  }
  // Rank 1 = best: PDR is negated so that smaller is better for all three.
  const char* names[] = {"pdr", "e2ed_ms", "nrl"};
  for (int metric = 0; metric < 3; ++metric) {
    std::vector<std::vector<double>> matrix;
    for (const auto& row : results) {
      std::vector<double> r;
      for (const auto& m : row) r.push_back(metric == 0 ? -m.pdr : metric == 1 ? m.e2ed : m.nrl);
      matrix.push_back(r);
    }
    const auto f = friedman_rank(matrix);
    std::printf("friedman %s:", names[metric]);
    for (std::size_t j = 0; j < k; ++j) std::printf(" %s=%.3f", configs[j].first.c_str(), f.mean_ranks[j]);
    std::printf(" chi2=%.4f p=%.4g\n", f.chi_square, f.p_value);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective AODV parameter tuning toolkit"};
  app.require_subcommand(1);
  int status = 0;

  OptimizeOptions opt;
  auto* optimize = app.add_subcommand("optimize", "Run NSGA-II or SMPSO");
  optimize->add_option("--algorithm", opt.algorithm)->check(CLI::IsMember({"nsga2", "smpso"}));
  add_backend_options(optimize, opt.backend);
  optimize->add_option("--pop", opt.pop, "Population / swarm size");
  optimize->add_option("--max-gens", opt.max_gens, "Generation cap");
  optimize->add_option("--hv-threshold", opt.hv_threshold, "Stop once the running front reaches this HV");
  optimize->add_option("--reference", opt.reference, "Reference front CSV used for normalization")
      ->check(CLI::ExistingFile);
  optimize->add_option("--seed", opt.seed);
  optimize->add_option("--reps", opt.reps, "Independent repetitions");
  optimize->add_option("--workers", opt.workers)->check(CLI::PositiveNumber);
  optimize->add_option("--out", opt.out, "Output directory")->required();
  optimize->add_option("--pc", opt.pc, "Crossover probability (NSGA-II)");
  optimize->add_option("--pm", opt.pm, "Mutation probability");
  optimize->add_flag("--quiet", opt.quiet);
  optimize->add_flag("--trace-metrics", opt.trace_metrics, "Write evaluations.csv with every evaluated objective vector and QoS");
  optimize->callback([&] { status = run_optimize(opt); });

  TuneOptions tune;
  auto* tune_cmd = app.add_subcommand("tune", "Median final hypervolume over a (p_C, p_M) grid");
  tune_cmd->add_option("--algorithm", tune.algorithm)->check(CLI::IsMember({"nsga2", "smpso"}));
  add_backend_options(tune_cmd, tune.backend);
  tune_cmd->add_option("--pc-grid", tune.pc_grid);
  tune_cmd->add_option("--pm-grid", tune.pm_grid);
  tune_cmd->add_option("--reps", tune.reps);
  tune_cmd->add_option("--max-gens", tune.max_gens);
  tune_cmd->add_option("--pop", tune.pop);
  tune_cmd->add_option("--seed", tune.seed);
  tune_cmd->add_option("--workers", tune.workers)->check(CLI::PositiveNumber);
  tune_cmd->add_option("--out", tune.out, "Write the table as CSV");
  tune_cmd->callback([&] { status = run_tune(tune); });

  std::string front_path, reference_path;
  auto* ind = app.add_subcommand("indicators", "Hypervolume, epsilon and spread of a front");
  ind->add_option("--front", front_path)->required()->check(CLI::ExistingFile);
  ind->add_option("--reference", reference_path)->required()->check(CLI::ExistingFile);
  ind->callback([&] { status = run_indicators(front_path, reference_path); });

  auto* stats = app.add_subcommand("stats", "Non-parametric tests");
  stats->require_subcommand(1);
  std::string a_path, b_path, matrix_path;
  auto* wil = stats->add_subcommand("wilcoxon", "Paired signed-rank test");
  wil->add_option("--a", a_path)->required()->check(CLI::ExistingFile);
  wil->add_option("--b", b_path)->required()->check(CLI::ExistingFile);
  wil->callback([&] { status = run_wilcoxon(a_path, b_path); });
  auto* fri = stats->add_subcommand("friedman", "Friedman rank test (rows = blocks, smaller is better)");
  fri->add_option("--matrix", matrix_path)->required()->check(CLI::ExistingFile);
  fri->callback([&] { status = run_friedman(matrix_path); });

  std::string select_front, select_genomes;
  auto* sel = app.add_subcommand("select", "Compromise solution closest to the ideal vector");
  sel->add_option("--front", select_front)->required()->check(CLI::ExistingFile);
  sel->add_option("--genomes", select_genomes)->required()->check(CLI::ExistingFile);
  sel->callback([&] { status = run_select(select_front, select_genomes); });

  std::string workers_list = "1,2,4,8";
  double delay_ms = 100.0;
  std::size_t batch = 24, batches = 10;
  auto* bench = app.add_subcommand("bench-parallel", "Speedup and efficiency of the worker pool");
  bench->add_option("--workers-list", workers_list);
  bench->add_option("--delay-ms", delay_ms);
  bench->add_option("--batch", batch);
  bench->add_option("--batches", batches);
  bench->callback([&] { status = run_bench(workers_list, delay_ms, batch, batches); });

  std::string preset_name = "default", scenario_out;
  std::uint64_t preset_seed = 1;
  std::optional<double> preset_duration;
  auto* scen = app.add_subcommand("scenario", "Write a preset scenario file");
  scen->add_option("--preset", preset_name)->check(CLI::IsMember({"default", "two-node", "partitioned", "chain3"}));
  scen->add_option("--seed", preset_seed);
  scen->add_option("--duration", preset_duration);
  scen->add_option("--out", scenario_out)->required();
  scen->callback([&] {
    ScenarioConfig sc = preset(preset_name, preset_seed);
    if (preset_duration) sc.duration = *preset_duration;
    save_scenario(scenario_out, sc);
  });

  std::uint64_t validation_seed = 1000;
  double validation_duration = 60.0;
  std::string validation_genomes;
  std::size_t validation_workers = 1;
  auto* val = app.add_subcommand("validate", "Simulate fixed configurations over the validation set");
  val->add_option("--base-seed", validation_seed);
  val->add_option("--duration", validation_duration);
  val->add_option("--genomes", validation_genomes, "Extra genomes CSV to compare")->check(CLI::ExistingFile);
  val->add_option("--workers", validation_workers)->check(CLI::PositiveNumber);
  val->callback([&] {
    status = run_validate(validation_seed, validation_duration, validation_genomes, validation_workers);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return status;
}
