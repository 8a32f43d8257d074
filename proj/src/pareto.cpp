#include "moaodv/pareto.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace moaodv {

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::span<EvaluatedSolution> pop) {
  const std::size_t n = pop.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;
  if (n == 0) return fronts;

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (dominates(pop[p].objectives, pop[q].objectives)) {
        dominated_by[p].push_back(q);
        ++domination_count[q];
      } else if (dominates(pop[q].objectives, pop[p].objectives)) {
        dominated_by[q].push_back(p);
        ++domination_count[p];
      }
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (domination_count[p] == 0) current.push_back(p);
  }

  std::size_t rank = 0;
  while (!current.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : current) {
      pop[p].rank = rank;
      for (std::size_t q : dominated_by[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(current));
    current = std::move(next);
    ++rank;
  }
  return fronts;
}

void crowding_distance(std::span<EvaluatedSolution> pop, std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  for (std::size_t i : front) pop[i].crowding = 0.0;
  if (n <= 2) {
    for (std::size_t i : front) pop[i].crowding = kInfiniteCrowding;
    return;
  }

  std::vector<std::size_t> order(front.begin(), front.end());
  for (std::size_t m = 0; m < kObjectiveCount; ++m) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pop[a].objectives[m] < pop[b].objectives[m];
    });
    const double lo = pop[order.front()].objectives[m];
    const double hi = pop[order.back()].objectives[m];
    pop[order.front()].crowding = kInfiniteCrowding;
    pop[order.back()].crowding = kInfiniteCrowding;
    const double extent = hi - lo;
    if (extent <= 0.0) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      auto& s = pop[order[k]];
      if (s.crowding == kInfiniteCrowding) continue;
      s.crowding += (pop[order[k + 1]].objectives[m] - pop[order[k - 1]].objectives[m]) / extent;
    }
  }
}

void crowding_distance(std::span<EvaluatedSolution> front) {
  std::vector<std::size_t> all(front.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  crowding_distance(front, all);
}

std::vector<std::vector<std::size_t>> ranking_and_crowding(std::span<EvaluatedSolution> pop) {
  auto fronts = fast_nondominated_sort(pop);
  for (const auto& f : fronts) crowding_distance(pop, f);
  return fronts;
}

ParetoArchive::ParetoArchive(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("archive capacity must be positive");
}

bool ParetoArchive::insert(const EvaluatedSolution& s) {
  for (const auto& m : members_) {
    if (dominates(m.objectives, s.objectives) || m.objectives == s.objectives) return false;
  }

  std::size_t keep = 0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (dominates(s.objectives, members_[i].objectives)) continue;
    if (keep != i) {
      members_[keep] = std::move(members_[i]);
      inserted_at_[keep] = inserted_at_[i];
    }
    ++keep;
  }
  members_.resize(keep);
  inserted_at_.resize(keep);

  members_.push_back(s);
  inserted_at_.push_back(next_stamp_++);

  if (members_.size() > capacity_) {
    refresh_crowding();
    std::size_t victim = 0;
    for (std::size_t i = 1; i < members_.size(); ++i) {
      const double c = members_[i].crowding;
      const double best = members_[victim].crowding;
      if (c < best || (c == best && inserted_at_[i] < inserted_at_[victim])) victim = i;
    }
    members_.erase(members_.begin() + static_cast<std::ptrdiff_t>(victim));
    inserted_at_.erase(inserted_at_.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return true;
}

void ParetoArchive::refresh_crowding() { crowding_distance(members_); }

std::vector<EvaluatedSolution> ParetoArchive::sorted_by_f1() const {
  std::vector<EvaluatedSolution> out(members_.begin(), members_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.objectives.f1 < b.objectives.f1 ||
           (a.objectives.f1 == b.objectives.f1 && a.objectives.f2 < b.objectives.f2);
  });
  return out;
}

std::vector<ObjectiveVector> ParetoArchive::objectives_sorted() const {
  std::vector<ObjectiveVector> out;
  out.reserve(members_.size());
  for (const auto& s : sorted_by_f1()) out.push_back(s.objectives);
  return out;
}

}  // namespace moaodv
