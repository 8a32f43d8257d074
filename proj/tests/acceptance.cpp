// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Pass criterion numbers as arguments to run
// a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "moaodv/experiment.hpp"
#include "moaodv/operators.hpp"
#include "moaodv/pareto.hpp"
#include "moaodv/random.hpp"
#include "moaodv/stats.hpp"
#include "moaodv/synthetic.hpp"
#include "moaodv/vanet.hpp"
#include "moaodv/zdt1.hpp"

using namespace moaodv;

namespace {

// Pinned tolerances and budgets.
constexpr double kC1BudgetSeconds = 120.0;
constexpr double kC3GridTolerance = 1e-3;
constexpr double kC3ExactTolerance = 1e-12;
constexpr double kC4MinHypervolume = 0.60;
constexpr int kC4MinPassingSeeds = 9;
constexpr double kC4BudgetSeconds = 60.0;
constexpr double kC5MinEfficiency = 0.80;
constexpr double kC8Tolerance = 1e-9;  // ms; delays come from absolute event times
constexpr double kC9BudgetSeconds = 900.0;
constexpr double kC10Tolerance = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os.precision(precision);
  os << v;
  return os.str();
}

Genome random_valid(const ParameterSpace& space, RandomSource& rng) {
  std::vector<double> v(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    v[i] = clamp_component(space[i], rng.uniform(space[i].lower, space[i].upper));
  }
  return Genome(std::move(v));
}

// 1. Trajectory invariance over worker counts.

bool same_history(const RunResult& a, const RunResult& b) {
  if (a.history.size() != b.history.size()) return false;
  for (std::size_t g = 0; g < a.history.size(); ++g) {
    if (a.history[g].front != b.history[g].front) return false;
    if (a.history[g].population != b.history[g].population) return false;
    if (a.history[g].hypervolume != b.history[g].hypervolume) return false;
  }
  const auto fa = a.front.sorted_by_f1();
  const auto fb = b.front.sorted_by_f1();
  if (fa.size() != fb.size()) return false;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i].genome != fb[i].genome || fa[i].objectives != fb[i].objectives) return false;
  }
  return true;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  Outcome o;
  auto sc = scenarios::default_scenario(1);
  sc.duration = 30.0;
  const VanetEvaluator vanet(sc);
  const Zdt1Evaluator zdt1(30);
  struct Backend {
    const Evaluator* ev;
    std::size_t generations;
  };
  const std::vector<Backend> backends{{&zdt1, 30}, {&vanet, 8}};
  const std::vector<std::size_t> workers{1, 2, 4, 8};
  std::vector<std::unique_ptr<WorkerPool>> pools;
  for (std::size_t m : workers) pools.push_back(std::make_unique<WorkerPool>(WorkerPoolConfig{m, true}));

  std::size_t comparisons = 0;
  for (const auto kind : {EngineKind::nsga2, EngineKind::smpso}) {
    const auto config = EngineConfig::defaults(kind);
    for (const auto& b : backends) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        RunOptions opts;
        opts.stop = StopCriterion::generations(b.generations);
        const RunResult base = run_engine(config, *b.ev, *pools[0], opts, seed);
        for (std::size_t w = 1; w < workers.size(); ++w) {
          const RunResult other = run_engine(config, *b.ev, *pools[w], opts, seed);
          ++comparisons;
          if (!same_history(base, other)) {
            o.pass = false;
            o.detail += engine_name(kind) + "/" + b.ev->name() + "/seed" + std::to_string(seed) +
                        "/m" + std::to_string(workers[w]) + " differs; ";
          }
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs > kC1BudgetSeconds) o.pass = false;
  o.detail += std::to_string(comparisons) + " run pairs compared, " + fmt(secs, 3) + " s (budget " +
              fmt(kC1BudgetSeconds) + " s)";
  return o;
}

// 2. Sorting oracle.

std::vector<std::size_t> peel_ranks(const std::vector<ObjectiveVector>& pts) {
  std::vector<std::size_t> rank(pts.size(), 0);
  std::vector<bool> done(pts.size(), false);
  std::size_t remaining = pts.size();
  for (std::size_t level = 0; remaining > 0; ++level) {
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (done[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        dominated = !done[j] && dominates(pts[j], pts[i]);
      }
      if (!dominated) layer.push_back(i);
    }
    for (std::size_t i : layer) {
      rank[i] = level;
      done[i] = true;
    }
    remaining -= layer.size();
  }
  return rank;
}

Outcome criterion2() {
  Outcome o;
  RandomSource rng(2002);
  std::size_t mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.uniform_index(64);
    // Half the populations sit on a coarse grid to force ties and duplicates.
    const bool coarse = t % 2 == 0;
    std::vector<ObjectiveVector> pts(n);
    std::vector<EvaluatedSolution> pop(n);
    for (std::size_t i = 0; i < n; ++i) {
      double a = rng.uniform(), b = rng.uniform();
      if (coarse) {
        a = std::floor(a * 6);
        b = std::floor(b * 6);
      }
      pts[i] = {a, b};
      pop[i].objectives = pts[i];
    }
    fast_nondominated_sort(pop);
    const auto expected = peel_ranks(pts);
    for (std::size_t i = 0; i < n; ++i) mismatches += pop[i].rank != expected[i];
  }
  o.pass = mismatches == 0;
  o.detail = "200 populations, " + std::to_string(mismatches) + " rank mismatches";
  return o;
}

// 3. Hypervolume oracle.

double grid_hypervolume(const Front& f, std::size_t cells) {
  const double h = 1.0 / static_cast<double>(cells);
  std::size_t covered = 0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double x = (i + 0.5) * h;
    // A cell centre (x, y) is covered when some point with f1 <= x has f2 <= y.
    double lowest = 2.0;
    for (const auto& p : f.points()) {
      if (p.f1 <= x) lowest = std::min(lowest, p.f2);
    }
    for (std::size_t j = 0; j < cells; ++j) covered += (j + 0.5) * h >= lowest;
  }
  return static_cast<double>(covered) * h * h;
}

Outcome criterion3() {
  Outcome o;
  RandomSource rng(3003);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.uniform_index(20);
    std::vector<ObjectiveVector> pts(n);
    for (auto& p : pts) p = {rng.uniform(), rng.uniform()};
    const Front f = Front::from_points(pts);
    worst = std::max(worst, std::abs(hypervolume_2d(f) - grid_hypervolume(f, 2000)));
  }
  const double e1 = std::abs(hypervolume_2d(Front({{0.5, 0.5}})) - 0.25);
  const double e2 = std::abs(hypervolume_2d(Front({{0.25, 0.75}, {0.75, 0.25}})) - 0.3125);
  o.pass = worst <= kC3GridTolerance && e1 <= kC3ExactTolerance && e2 <= kC3ExactTolerance;
  o.detail = "max grid deviation " + fmt(worst, 3) + " (tol " + fmt(kC3GridTolerance) +
             "), exact cases off by " + fmt(e1, 3) + " and " + fmt(e2, 3);
  return o;
}

// 4. Convergence on ZDT1.

Outcome criterion4() {
  Outcome o;
  const Zdt1Evaluator ev(30);
  WorkerPool pool({1, true});
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 1; s <= 10; ++s) seeds.push_back(s);
  for (const auto kind : {EngineKind::nsga2, EngineKind::smpso}) {
    EngineConfig config = EngineConfig::defaults(kind);
    config.set_population(100);
    const auto t0 = Clock::now();
    const auto records = run_experiment(config, ev, pool, StopCriterion::generations(250), 10, seeds);
    const double secs = seconds_since(t0);
    int passing = 0;
    double lo = 1.0, hi = 0.0;
    for (const auto& r : records) {
      const double hv = r.failed ? 0.0 : normalized_hypervolume(r.front_objectives(), ev.default_bounds());
      passing += hv >= kC4MinHypervolume;
      lo = std::min(lo, hv);
      hi = std::max(hi, hv);
    }
    const bool ok = passing >= kC4MinPassingSeeds && secs <= kC4BudgetSeconds;
    o.pass = o.pass && ok;
    o.detail += engine_name(kind) + ": " + std::to_string(passing) + "/10 seeds >= " +
                fmt(kC4MinHypervolume) + " (hv " + fmt(lo) + ".." + fmt(hi) + "), " + fmt(secs, 3) +
                " s; ";
  }
  return o;
}

// 5. Parallel efficiency with a synthetic delay.

Outcome criterion5() {
  Outcome o;
  const Zdt1Evaluator inner(30);
  const DelayedEvaluator ev(inner, std::chrono::milliseconds(100));
  WorkerPool seq({1, true});
  WorkerPool par({8, true});
  const auto t1 = time_batches(seq, ev, 24, 10, 5);
  const auto t8 = time_batches(par, ev, 24, 10, 5);
  const auto e = measure_efficiency(t8, t1, 8);
  o.pass = e.efficiency >= kC5MinEfficiency;
  o.detail = "m=8 speedup " + fmt(e.speedup) + ", efficiency " + fmt(e.efficiency) + " (min " +
             fmt(kC5MinEfficiency) + ")";
  return o;
}

// 6. Stop-criterion semantics.

Outcome criterion6() {
  Outcome o;
  const std::vector<double> seq{0.70, 0.785, 0.90};
  const auto advance = [&](std::size_t g) { return seq[std::min(g, seq.size()) - 1]; };
  const StopCriterion reach{0.785, 450, std::nullopt};
  const StopCriterion never{0.95, 450, std::nullopt};
  const auto a = run_until(reach, advance);
  const auto b = run_until(never, advance);
  o.pass = a == 2 && b == 450;
  o.detail = "threshold 0.785 stops at " + std::to_string(a) + ", threshold 0.95 stops at " +
             std::to_string(b) + " of 450";
  return o;
}

// 7. Operator contracts.

Outcome criterion7() {
  Outcome o;
  const auto space = ParameterSpace::aodv();
  const auto limits = speed_limits(space);
  RandomSource rng(7007);
  std::size_t invalid = 0, identity_breaks = 0, closed_form_breaks = 0;
  for (int t = 0; t < 10000; ++t) {
    const Genome p = random_valid(space, rng);
    const Genome q = random_valid(space, rng);

    const Genome m = uniform_mutation(space, p, rng.uniform(), rng);
    invalid += !validate_genome(space, m);
    identity_breaks += uniform_mutation(space, p, 0.0, rng) != p;

    const auto [c1, c2] = arithmetic_recombination(space, p, q, rng.uniform());
    invalid += !validate_genome(space, c1) + !validate_genome(space, c2);

    Particle part{p, std::vector<double>(space.size()), {q, {}, 0, 0.0}};
    for (std::size_t i = 0; i < space.size(); ++i) part.velocity[i] = rng.uniform(-limits[i], limits[i]);
    velocity_update(part, random_valid(space, rng),
                    {0.1, rng.uniform(1.5, 2.5), rng.uniform(1.5, 2.5), rng.uniform(), rng.uniform()}, space);
    position_update(part, space);
    invalid += !validate_genome(space, part.position);

    if (t < 1000) {
      const auto [z1, z2] = arithmetic_recombination(space, p, q, 0.0);
      const auto [o1, o2] = arithmetic_recombination(space, p, q, 1.0);
      const auto [h1, h2] = arithmetic_recombination(space, p, q, 0.5);
      closed_form_breaks += !(z1 == q && z2 == p && o1 == p && o2 == q && h1 == h2);
      for (std::size_t i = 0; i < space.size(); ++i) {
        double mid = 0.5 * p[i] + 0.5 * q[i];
        if (space[i].is_integer()) mid = std::floor(mid + 0.5);
        closed_form_breaks += h1[i] != mid;
      }
    }
  }
  o.pass = invalid == 0 && identity_breaks == 0 && closed_form_breaks == 0;
  o.detail = "10000 rounds: " + std::to_string(invalid) + " invalid genomes, " +
             std::to_string(identity_breaks) + " p_M=0 changes, " + std::to_string(closed_form_breaks) +
             " closed-form mismatches";
  return o;
}

// 8. Surrogate golden traces.

bool near(double a, double b) { return std::abs(a - b) <= kC8Tolerance; }

Outcome criterion8() {
  Outcome o;
  const auto two = simulate_vanet(scenarios::two_node(true), aodv::rfc_defaults());
  const auto chain = simulate_vanet(scenarios::chain3(), aodv::rfc_defaults());
  const bool two_ok = two.pdr == 100.0 && near(two.e2ed, 5.0) && near(two.nrl, 20.0 / 70.0);
  const bool chain_ok =
      chain.pdr == 100.0 && near(chain.e2ed, 702.176 / 70.0) && near(chain.nrl, 32.0 / 70.0);

  const auto space = ParameterSpace::aodv();
  RandomSource rng(8008);
  std::size_t connected_breaks = 0, partitioned_breaks = 0;
  for (int i = 0; i < 50; ++i) {
    const Genome g = random_valid(space, rng);
    connected_breaks += simulate_vanet(scenarios::two_node(true), g).pdr != 100.0;
    partitioned_breaks += simulate_vanet(scenarios::two_node(false), g).pdr != 0.0;
  }
  o.pass = two_ok && chain_ok && connected_breaks == 0 && partitioned_breaks == 0;
  o.detail = std::string("two-node ") + (two_ok ? "ok" : "MISMATCH") + ", chain ";
  o.detail += chain_ok ? "ok" : "MISMATCH";
  o.detail += ", 50 genomes: " + std::to_string(connected_breaks) + " connected and " +
              std::to_string(partitioned_breaks) + " partitioned violations";
  return o;
}

// 9. End-to-end optimization on the default scenario.

Outcome criterion9() {
  Outcome o;
  auto sc = scenarios::default_scenario(1);
  sc.duration = 60.0;
  const VanetEvaluator ev(sc);
  WorkerPool pool({8, true});
  const std::vector<std::uint64_t> seeds{1};
  for (const auto kind : {EngineKind::nsga2, EngineKind::smpso}) {
    const auto t0 = Clock::now();
    const auto rec =
        run_experiment(EngineConfig::defaults(kind), ev, pool, StopCriterion::generations(100), 1, seeds)[0];
    const double secs = seconds_since(t0);
    bool ok = !rec.failed && rec.generations_used == 100;
    const auto pts = rec.front_objectives();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = 0; j < pts.size(); ++j) ok = ok && (i == j || !dominates(pts[i], pts[j]));
    }
    ok = ok && pts.size() >= 3;
    bool monotone = true;
    for (std::size_t g = 1; g < rec.history.size(); ++g) {
      monotone = monotone && rec.history[g].hypervolume >= rec.history[g - 1].hypervolume;
    }
    bool selected_valid = false;
    if (!pts.empty()) {
      const auto genomes = rec.front_genomes();
      selected_valid = validate_genome(ev.space(), select_compromise(pts, genomes).first);
    }
    ok = ok && monotone && selected_valid && secs <= kC9BudgetSeconds;
    o.pass = o.pass && ok;
    o.detail += engine_name(kind) + ": " + std::to_string(pts.size()) + " front points, hv " +
                fmt(rec.final_hypervolume) + (monotone ? " non-decreasing" : " DECREASED") +
                (selected_valid ? ", compromise valid, " : ", compromise INVALID, ") + fmt(secs, 3) + " s; ";
    if (rec.failed) o.detail += "error: " + rec.error + "; ";
  }
  return o;
}

// 10. Statistics oracles.

double enumerate_p(const std::vector<double>& ranks, double r_plus) {
  double total = 0.0;
  for (double r : ranks) total += r;
  const double mean = total / 2.0;
  const double observed = std::abs(r_plus - mean);
  std::size_t extreme = 0;
  const std::size_t n = ranks.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) s += ranks[i];
    }
    extreme += std::abs(s - mean) >= observed - 1e-9;
  }
  return static_cast<double>(extreme) / std::ldexp(1.0, static_cast<int>(n));
}

Outcome criterion10() {
  Outcome o;
  RandomSource rng(1010);
  double worst_p = 0.0;
  std::size_t exact_cases = 0;
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + rng.uniform_index(12);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::round(rng.uniform(-6, 6));
      b[i] = std::round(rng.uniform(-6, 6));
    }
    const auto w = wilcoxon_signed_rank(a, b);
    if (w.degenerate) continue;
    std::vector<double> mags;
    for (std::size_t i = 0; i < n; ++i) {
      if (a[i] != b[i]) mags.push_back(std::abs(a[i] - b[i]));
    }
    worst_p = std::max(worst_p, std::abs(w.p_value - enumerate_p(average_ranks(mags), w.r_plus)));
    ++exact_cases;
  }

  const double chi = friedman_rank({{1, 2, 3}, {10, 20, 30}}).chi_square;

  std::size_t identity_breaks = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng.uniform_index(40);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.uniform();
      b[i] = rng.uniform();
    }
    const auto w = wilcoxon_signed_rank(a, b);
    const double m = static_cast<double>(w.n);
    identity_breaks += std::abs(w.r_plus + w.r_minus - m * (m + 1) / 2) > kC10Tolerance;
  }
  o.pass = worst_p <= kC10Tolerance && chi == 4.0 && identity_breaks == 0;
  o.detail = std::to_string(exact_cases) + " exact p-values, max deviation " + fmt(worst_p, 3) +
             "; friedman monotone chi2 " + fmt(chi, 17) + "; " + std::to_string(identity_breaks) +
             " rank-sum identity violations";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome out;
    const auto t0 = Clock::now();
    try {
      out = criteria[i]();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failures += !out.pass;
    std::printf("criterion %2d %s  %s [%.1f s]\n", id, out.pass ? "PASS" : "FAIL", out.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
