#pragma once

// Deterministic random search with hill-climbing refinement, and a small
// worker pool whose results come back in index order.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <random>
#include <span>
#include <thread>
#include <vector>

namespace tailspace {

// SplitMix64 finalizer; derives independent per-instance seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

using Rng = std::mt19937_64;

struct SearchOptions {
  long budget = 10000;      // objective evaluations, seeds included
  double random_share = 0.5;
  std::uint64_t seed = 1;
};

struct SearchResult {
  double best = 0.0;
  std::vector<double> point;
  long evaluations = 0;
};

using Objective = std::function<double(std::span<const double>)>;

// Maximizes `objective` over R^dim. Seeds are evaluated first; the rest of the
// budget is split between Gaussian/sign/sparse sampling and a coordinate
// hill-climb with adaptive step and single-coordinate sign flips.
SearchResult maximize(std::size_t dim, const Objective& objective, const std::vector<std::vector<double>>& seeds,
                      const SearchOptions& opts);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Output order is the
// index order regardless of scheduling.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, int jobs, Fn&& fn) {
  std::vector<T> out(count);
  const auto workers = static_cast<std::size_t>(std::max(1, jobs));
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            out[i] = fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace tailspace
