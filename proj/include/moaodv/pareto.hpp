#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "moaodv/objectives.hpp"

namespace moaodv {

/// Fronts are lists of indices into the sorted population. Sets each
/// solution's `rank` to its front index.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<EvaluatedSolution> pop);

/// Assigns `crowding` to the members of `pop` listed in `front`.
void crowding_distance(std::span<EvaluatedSolution> pop, std::span<const std::size_t> front);

/// Convenience overload: the whole span is one front.
void crowding_distance(std::span<EvaluatedSolution> front);

/// Rank every member and compute crowding within each front.
std::vector<std::vector<std::size_t>> ranking_and_crowding(std::span<EvaluatedSolution> pop);

/// Bounded non-dominated set. Duplicate objective vectors are rejected.
/// When full, the member with the smallest crowding distance is evicted,
/// earliest-inserted first on ties.
class ParetoArchive {
 public:
  static constexpr std::size_t kUnbounded = static_cast<std::size_t>(-1);

  explicit ParetoArchive(std::size_t capacity = kUnbounded);

  /// Returns true when `s` was accepted. An accepted solution can still be
  /// the one evicted by the capacity check.
  bool insert(const EvaluatedSolution& s);

  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  /// Members in insertion order; `crowding` is current after `refresh_crowding`.
  std::span<const EvaluatedSolution> members() const { return members_; }
  const EvaluatedSolution& operator[](std::size_t i) const { return members_[i]; }

  void refresh_crowding();

  /// Members sorted ascending by f1.
  std::vector<EvaluatedSolution> sorted_by_f1() const;
  std::vector<ObjectiveVector> objectives_sorted() const;

 private:
  std::size_t capacity_;
  std::vector<EvaluatedSolution> members_;
  std::vector<std::uint64_t> inserted_at_;
  std::uint64_t next_stamp_ = 0;
};

}  // namespace moaodv
