#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "moaodv/csv.hpp"
#include "moaodv/experiment.hpp"
#include "moaodv/stats.hpp"
#include "moaodv/vanet.hpp"
#include "moaodv/zdt1.hpp"

using namespace moaodv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("moaodv_test_" + name);
  fs::create_directories(p);
  return p;
}

class ThrowingEvaluator final : public Evaluator {
 public:
  Evaluation evaluate(const Genome&) const override { throw std::runtime_error("backend down"); }
  const ParameterSpace& space() const override { return inner.space(); }
  ObjectiveBounds default_bounds() const override { return inner.default_bounds(); }
  std::string name() const override { return "broken"; }
  Zdt1Evaluator inner{5};
};

}  // namespace

TEST_CASE("select_compromise examples", "[experiment]") {
  const std::vector<ObjectiveVector> single{{3, 4}};
  CHECK(select_compromise(single) == 0);
  const std::vector<ObjectiveVector> front{{10, 100}, {20, 50}, {40, 40}};
  CHECK(select_compromise(front) == 1);
  const std::vector<ObjectiveVector> sym{{0, 1}, {0.5, 0.5}, {1, 0}};
  CHECK(select_compromise(sym) == 1);
  // Two members at equal distance: the smaller f1 wins.
  const std::vector<ObjectiveVector> tie{{0, 1}, {1, 0}};
  CHECK(select_compromise(tie) == 0);
  CHECK_THROWS(select_compromise(std::vector<ObjectiveVector>{}));

  const std::vector<Genome> genomes{Genome{1.0}, Genome{2.0}, Genome{3.0}};
  const auto [g, obj] = select_compromise(front, genomes);
  CHECK(g == Genome{2.0});
  CHECK(obj == ObjectiveVector{20, 50});
  CHECK_THROWS(select_compromise(front, std::span(genomes).subspan(0, 2)));
}

TEST_CASE("campaign seeds derive from one number", "[experiment]") {
  const auto a = campaign_seeds(7, 5);
  CHECK(a == campaign_seeds(7, 5));
  CHECK(a.size() == 5);
  CHECK(std::vector<std::uint64_t>(a.begin(), a.begin() + 3) == campaign_seeds(7, 3));
  CHECK(a != campaign_seeds(8, 5));
}

TEST_CASE("run_experiment is reproducible across invocations and worker counts", "[experiment]") {
  Zdt1Evaluator ev(30);
  EngineConfig cfg = EngineConfig::defaults(EngineKind::nsga2);
  cfg.set_population(12);
  const auto seeds = campaign_seeds(1, 2);
  const auto stop = StopCriterion::generations(8);
  WorkerPool one({1, true}), four({4, true});
  const auto a = run_experiment(cfg, ev, one, stop, 2, seeds);
  const auto b = run_experiment(cfg, ev, four, stop, 2, seeds);
  REQUIRE(a.size() == 2);
  for (std::size_t r = 0; r < 2; ++r) {
    CHECK_FALSE(a[r].failed);
    CHECK(a[r].generations_used == 8);
    CHECK(a[r].front_objectives() == b[r].front_objectives());
    CHECK(a[r].front_genomes() == b[r].front_genomes());
  }
  CHECK(a[0].front_objectives() != a[1].front_objectives());
  CHECK_THROWS(run_experiment(cfg, ev, one, stop, 3, seeds));
}

TEST_CASE("failed repetitions are recorded", "[experiment]") {
  ThrowingEvaluator ev;
  WorkerPool pool({2, true});
  const auto seeds = campaign_seeds(1, 2);
  const auto recs = run_experiment(EngineConfig::defaults(EngineKind::smpso), ev, pool,
                                   StopCriterion::generations(3), 2, seeds);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    CHECK(r.failed);
    CHECK(r.error.find("backend down") != std::string::npos);
  }
}

TEST_CASE("threshold stop through run_experiment", "[experiment]") {
  Zdt1Evaluator ev(30);
  WorkerPool pool({1, true});
  const std::vector<std::uint64_t> seeds{5};
  StopCriterion stop{0.0, 450, std::nullopt};
  CHECK(run_experiment(EngineConfig::defaults(EngineKind::nsga2), ev, pool, stop, 1, seeds)[0].generations_used == 1);
  stop.hv_threshold = 2.0;
  stop.max_generations = 6;
  const auto rec = run_experiment(EngineConfig::defaults(EngineKind::smpso), ev, pool, stop, 1, seeds)[0];
  CHECK(rec.generations_used == 6);
  CHECK(rec.history.size() == 7);
}

TEST_CASE("vanet runs carry QoS for every front member", "[experiment]") {
  auto sc = scenarios::default_scenario(2);
  sc.duration = 10.0;
  const VanetEvaluator ev(sc);
  WorkerPool pool({2, true});
  EngineConfig cfg = EngineConfig::defaults(EngineKind::nsga2);
  cfg.set_population(8);
  const std::vector<std::uint64_t> seeds{3};
  std::size_t observed = 0;
  const auto rec = run_experiment(cfg, ev, pool, StopCriterion::generations(2), 1, seeds,
                                  [&](std::size_t, const EvaluationBatch& b) { observed += b.genomes.size(); })[0];
  REQUIRE_FALSE(rec.failed);
  CHECK(observed == 24);
  REQUIRE(rec.front_metrics.size() == rec.front.size());
  for (std::size_t i = 0; i < rec.front.size(); ++i) {
    REQUIRE(rec.front_metrics[i].has_value());
    CHECK(objectives_from_metrics(*rec.front_metrics[i]) == rec.front[i].objectives);
  }
}

TEST_CASE("tune sweep shapes and flags the best cell", "[experiment]") {
  Zdt1Evaluator ev(30);
  WorkerPool pool({1, true});
  EngineConfig cfg = EngineConfig::defaults(EngineKind::nsga2);
  cfg.set_population(8);
  const std::vector<double> pcs{0.5, 0.9};
  const std::vector<double> pms{0.023, 0.182};
  const auto cells = tune_sweep(cfg, ev, pool, pcs, pms, 3, 4, 1);
  REQUIRE(cells.size() == 4);
  std::size_t flagged = 0;
  double best = -1.0;
  for (const auto& c : cells) {
    flagged += c.best;
    best = std::max(best, c.median_hypervolume);
    CHECK(c.hypervolumes.size() == 3);
    CHECK(c.median_hypervolume == median(c.hypervolumes));
  }
  CHECK(flagged == 1);
  for (const auto& c : cells) {
    if (c.best) CHECK(c.median_hypervolume == best);
  }

  EngineConfig pso = EngineConfig::defaults(EngineKind::smpso);
  pso.set_population(8);
  const std::vector<double> one_pm{0.091};
  const auto single = tune_sweep(pso, ev, pool, {}, one_pm, 2, 3, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0].best);
  CHECK_FALSE(single[0].p_crossover.has_value());

  const auto path = scratch_dir("tune") / "tune.csv";
  write_tune_csv(path.string(), cells);
  const auto table = read_csv(path.string());
  CHECK(table.header.front() == "p_crossover");
  CHECK(table.rows.size() == 4);
}

TEST_CASE("csv round trips", "[experiment]") {
  const auto dir = scratch_dir("csv");
  const std::vector<ObjectiveVector> pts{{0.1, 0.9}, {0.5, 0.25}};
  write_front_csv((dir / "front.csv").string(), pts);
  CHECK(read_front_csv((dir / "front.csv").string()) == pts);
  {
    std::ifstream in(dir / "front.csv");
    std::string header;
    std::getline(in, header);
    CHECK(header == "f1,f2");
  }

  const auto space = ParameterSpace::aodv();
  const std::vector<Genome> gs{aodv::rfc_defaults(), Genome{10.46, 10.55, 20.42, 6.89, 41.13, 21, 6, 6, 7, 3, 19}};
  write_genomes_csv((dir / "genomes.csv").string(), space, gs);
  CHECK(read_genomes_csv((dir / "genomes.csv").string()) == gs);
  CHECK(read_csv((dir / "genomes.csv").string()).header == space.column_names());

  std::ofstream(dir / "sample.csv") << "value\n1.5\n2.5\n# note\n\n3\n";
  CHECK(read_sample_csv((dir / "sample.csv").string()) == std::vector<double>{1.5, 2.5, 3});
  std::ofstream(dir / "bad.csv") << "a,b\n1,2\n3\n";
  CHECK_THROWS(read_csv((dir / "bad.csv").string()));
  CHECK_THROWS(read_csv((dir / "missing.csv").string()));
}

TEST_CASE("run metadata document", "[experiment]") {
  RunRecord rec;
  rec.seed = 42;
  rec.generations_used = 7;
  rec.evaluations = 192;
  rec.indicators = {0.5, 0.1, 0.3};
  const auto cfg = EngineConfig::defaults(EngineKind::nsga2);
  const std::string json = run_metadata_json(rec, cfg, "zdt1", 4, StopCriterion::generations(10));
  CHECK(json.find("\"seed\": 42") != std::string::npos);
  CHECK(json.find("\"generations_used\": 7") != std::string::npos);
  CHECK(json.find("\"evaluations\": 192") != std::string::npos);
  CHECK(json.find("\"p_crossover\": 0.9") != std::string::npos);
  CHECK(json.find("\"workers\": 4") != std::string::npos);
}

TEST_CASE("engine names", "[experiment]") {
  CHECK(parse_engine("nsga2") == EngineKind::nsga2);
  CHECK(parse_engine("smpso") == EngineKind::smpso);
  CHECK_THROWS(parse_engine("moead"));
  CHECK(EngineConfig::defaults(EngineKind::nsga2).p_mutation() == 0.023);
  CHECK(EngineConfig::defaults(EngineKind::smpso).p_mutation() == 0.091);
  CHECK(EngineConfig::defaults(EngineKind::smpso).population() == 24);
}
