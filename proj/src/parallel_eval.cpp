#include "moaodv/parallel_eval.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

namespace moaodv {

namespace {

std::string describe(const Genome& g) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? ", " : "") << g[i];
  os << ')';
  return os.str();
}

std::string message_of(const std::exception_ptr& e) {
  try {
    std::rethrow_exception(e);
  } catch (const std::exception& ex) {
    return ex.what();
  } catch (...) {
    return "unknown error";
  }
}

}  // namespace

BatchError::BatchError(std::size_t index, Genome genome, const std::string& message)
    : std::runtime_error("evaluation failed at index " + std::to_string(index) + " for genome " +
                         describe(genome) + ": " + message),
      index_(index),
      genome_(std::move(genome)) {}

WorkerPool::WorkerPool(WorkerPoolConfig config) : config_(config) {
  if (config_.worker_count == 0) throw std::invalid_argument("worker pool needs at least one worker");
  if (config_.reuse_workers) start_workers();
}

WorkerPool::~WorkerPool() { stop_workers(); }

PoolCounters WorkerPool::counters() const {
  std::lock_guard lock(mutex_);
  return counters_;
}

void WorkerPool::start_workers() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = false;
    counters_.workers_created += config_.worker_count;
  }
  threads_.reserve(config_.worker_count);
  for (std::size_t i = 0; i < config_.worker_count; ++i) {
    threads_.emplace_back([this] { worker_loop(); });
  }
}

void WorkerPool::stop_workers() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  work_ready_.notify_all();
  for (auto& t : threads_) t.join();
  threads_.clear();
}

void WorkerPool::worker_loop() {
  std::size_t seen = 0;
  std::unique_lock lock(mutex_);
  for (;;) {
    work_ready_.wait(lock, [&] { return stopping_ || (job_ != nullptr && generation_ != seen); });
    if (stopping_) return;
    seen = generation_;
    Job* job = job_;
    ++active_;
    lock.unlock();
    drain(*job);
    lock.lock();
    --active_;
    if (job->done == job->size && active_ == 0) work_done_.notify_all();
  }
}

void WorkerPool::drain(Job& job) {
  for (;;) {
    const std::size_t i = job.next.fetch_add(1, std::memory_order_relaxed);
    if (i >= job.size) return;
    std::exception_ptr error;
    try {
      (*job.task)(i);
    } catch (...) {
      error = std::current_exception();
    }
    std::lock_guard lock(mutex_);
    if (error) job.errors.emplace_back(i, error);
    ++job.done;
  }
}

std::vector<std::pair<std::size_t, std::exception_ptr>> WorkerPool::run(
    std::size_t n, const std::function<void(std::size_t)>& task) {
  if (n == 0) return {};
  if (!config_.reuse_workers) start_workers();

  Job job;
  job.size = n;
  job.task = &task;
  const auto started = std::chrono::steady_clock::now();
  {
    std::unique_lock lock(mutex_);
    job_ = &job;
    ++generation_;
    work_ready_.notify_all();
    work_done_.wait(lock, [&] { return job.done == job.size && active_ == 0; });
    job_ = nullptr;
    ++counters_.batches;
    counters_.evaluations += n;
    counters_.busy_wall_seconds +=
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  }

  if (!config_.reuse_workers) stop_workers();
  std::sort(job.errors.begin(), job.errors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return std::move(job.errors);
}

EvaluationBatch evaluate_batch(WorkerPool& pool, const Evaluator& evaluator,
                               std::vector<Genome> genomes) {
  EvaluationBatch batch;
  batch.genomes = std::move(genomes);
  const std::size_t n = batch.genomes.size();
  batch.results.assign(n, ObjectiveVector{});
  batch.metrics.assign(n, std::nullopt);

  const auto start = std::chrono::steady_clock::now();
  const std::function<void(std::size_t)> task = [&](std::size_t i) {
    Evaluation e = evaluator.evaluate(batch.genomes[i]);
    batch.results[i] = e.objectives;
    batch.metrics[i] = e.metrics;
  };
  for (auto& [index, error] : pool.run(n, task)) {
    batch.failures.push_back({index, message_of(error)});
  }
  batch.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return batch;
}

void require_success(const EvaluationBatch& batch) {
  if (batch.ok()) return;
  const auto& f = batch.failures.front();
  throw BatchError(f.index, batch.genomes[f.index], f.message);
}

Efficiency measure_efficiency(std::span<const double> times_parallel,
                              std::span<const double> times_sequential, std::size_t workers) {
  if (times_parallel.empty() || times_sequential.empty()) {
    throw std::invalid_argument("measure_efficiency: empty sample");
  }
  if (workers == 0) throw std::invalid_argument("measure_efficiency: zero workers");
  const auto mean = [](std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  };
  const double tm = mean(times_parallel);
  if (tm <= 0.0) throw std::invalid_argument("measure_efficiency: zero mean parallel time");
  const double speedup = mean(times_sequential) / tm;
  return {speedup, speedup / static_cast<double>(workers)};
}

}  // namespace moaodv
