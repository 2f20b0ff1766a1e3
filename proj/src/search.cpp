#include "tailspace/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tailspace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

struct Candidate {
  double score;
  std::vector<double> point;
};

void sample(Rng& rng, std::vector<double>& x) {
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> unit;
  switch (kind(rng)) {
    case 0:  // dense Gaussian
      for (double& v : x) v = gauss(rng);
      break;
    case 1:  // random signs
      for (double& v : x) v = unit(rng) < 0.5 ? -1.0 : 1.0;
      break;
    case 2: {  // sparse Gaussian
      const double keep = std::max(1.0 / static_cast<double>(x.size()), unit(rng));
      for (double& v : x) v = unit(rng) < keep ? gauss(rng) : 0.0;
      break;
    }
    default: {  // sparse signs
      const double keep = std::max(1.0 / static_cast<double>(x.size()), unit(rng));
      for (double& v : x) v = unit(rng) < keep ? (unit(rng) < 0.5 ? -1.0 : 1.0) : 0.0;
      break;
    }
  }
}

}  // namespace

SearchResult maximize(std::size_t dim, const Objective& objective, const std::vector<std::vector<double>>& seeds,
                      const SearchOptions& opts) {
  SearchResult res;
  res.best = -std::numeric_limits<double>::infinity();
  Rng rng(mix_seed(opts.seed, 0));
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    const double v = objective(x);
    if (std::isfinite(v) && v > res.best) {
      res.best = v;
      res.point = x;
    }
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };
  if (dim == 0) return res;

  std::vector<Candidate> top;
  auto offer = [&](double score, const std::vector<double>& x) {
    constexpr std::size_t keep = 4;
    if (top.size() < keep || score > top.back().score) {
      top.push_back({score, x});
      std::sort(top.begin(), top.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
      if (top.size() > keep) top.pop_back();
    }
  };
  for (const auto& s : seeds) {
    if (s.size() != dim || res.evaluations >= opts.budget) continue;
    offer(eval(s), s);
  }
  const long random_budget = static_cast<long>(opts.random_share * static_cast<double>(opts.budget));
  std::vector<double> x(dim);
  while (res.evaluations < random_budget) {
    sample(rng, x);
    offer(eval(x), x);
  }

  // Hill-climb from each retained candidate in turn.
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<std::size_t> pick(0, dim - 1);
  std::uniform_real_distribution<double> unit;
  std::size_t which = 0;
  while (res.evaluations < opts.budget && !top.empty()) {
    const std::size_t slot = which++ % top.size();
    Candidate cur = top[slot];
    double step = 0.5;
    const long leg = std::max<long>(50, (opts.budget - res.evaluations) / static_cast<long>(top.size() + 1));
    for (long i = 0; i < leg && res.evaluations < opts.budget; ++i) {
      std::vector<double> y = cur.point;
      double scale = 0.0;
      for (double v : y) scale = std::max(scale, std::abs(v));
      if (scale == 0.0) scale = 1.0;
      const double r = unit(rng);
      if (r < 0.15) {
        const std::size_t j = pick(rng);
        y[j] = -y[j];
      } else if (r < 0.6) {
        y[pick(rng)] += step * scale * gauss(rng);
      } else {
        for (double& v : y) v += 0.3 * step * scale * gauss(rng);
      }
      const double v = eval(y);
      if (v > cur.score) {
        cur.score = v;
        cur.point = std::move(y);
        step = std::min(step * 1.5, 2.0);
      } else {
        step *= 0.85;
        if (step < 1e-7) step = 0.5;
      }
    }
    top[slot] = std::move(cur);
  }
  return res;
}

}  // namespace tailspace
