#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "moaodv/evaluator.hpp"

namespace moaodv {

struct WorkerPoolConfig {
  std::size_t worker_count = 1;
  bool reuse_workers = true;
};

struct EvaluationFailure {
  std::size_t index;
  std::string message;
};

/// Results of one generation's evaluations, aligned with the input genomes.
struct EvaluationBatch {
  std::vector<Genome> genomes;
  std::vector<ObjectiveVector> results;
  std::vector<std::optional<QosMetrics>> metrics;
  std::vector<EvaluationFailure> failures;
  double wall_seconds = 0.0;

  bool ok() const { return failures.empty(); }
};

class BatchError : public std::runtime_error {
 public:
  BatchError(std::size_t index, Genome genome, const std::string& message);

  std::size_t index() const { return index_; }
  const Genome& genome() const { return genome_; }

 private:
  std::size_t index_;
  Genome genome_;
};

struct PoolCounters {
  std::size_t workers_created = 0;
  std::size_t batches = 0;
  std::size_t evaluations = 0;
  double busy_wall_seconds = 0.0;
};

/// Fixed set of slave threads. The master hands over a batch, workers pull
/// indices until the batch is drained, and `run` returns at the barrier.
class WorkerPool {
 public:
  explicit WorkerPool(WorkerPoolConfig config);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t worker_count() const { return config_.worker_count; }
  const WorkerPoolConfig& config() const { return config_; }
  PoolCounters counters() const;

  /// Calls task(i) for every i in [0, n) and blocks until all are done.
  /// Exceptions are caught per index and returned.
  std::vector<std::pair<std::size_t, std::exception_ptr>> run(
      std::size_t n, const std::function<void(std::size_t)>& task);

 private:
  struct Job {
    std::size_t size = 0;
    const std::function<void(std::size_t)>* task = nullptr;
    std::atomic<std::size_t> next{0};
    std::size_t done = 0;
    std::vector<std::pair<std::size_t, std::exception_ptr>> errors;
  };

  void start_workers();
  void stop_workers();
  void worker_loop();
  void drain(Job& job);

  WorkerPoolConfig config_;
  std::vector<std::thread> threads_;

  mutable std::mutex mutex_;
  std::condition_variable work_ready_;
  std::condition_variable work_done_;
  Job* job_ = nullptr;
  std::size_t generation_ = 0;
  bool stopping_ = false;
  std::size_t active_ = 0;

  PoolCounters counters_;
};

/// Evaluates all genomes through the pool. Failed indices are reported in
/// `failures`; their result slots hold zero objectives.
EvaluationBatch evaluate_batch(WorkerPool& pool, const Evaluator& evaluator,
                               std::vector<Genome> genomes);

/// Throws BatchError naming the first failed index, if any.
void require_success(const EvaluationBatch& batch);

struct Efficiency {
  double speedup;
  double efficiency;
};

/// speedup = mean(T_1) / mean(T_m); efficiency = speedup / m.
Efficiency measure_efficiency(std::span<const double> times_parallel,
                              std::span<const double> times_sequential, std::size_t workers);

}  // namespace moaodv
