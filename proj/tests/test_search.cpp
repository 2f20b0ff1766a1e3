#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "tailspace/search.hpp"

using namespace tailspace;

TEST_CASE("seed mixing") {
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  CHECK(mix_seed(1, 2) != mix_seed(1, 3));
}

TEST_CASE("maximize finds an interior optimum and respects the budget") {
  const Objective bowl = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s -= (x[i] - 0.5 * static_cast<double>(i)) * (x[i] - 0.5 * static_cast<double>(i));
    return s;
  };
  SearchOptions opts;
  opts.budget = 4000;
  const auto r = maximize(3, bowl, {{0.0, 0.0, 0.0}}, opts);
  CHECK(r.evaluations <= opts.budget);
  CHECK(r.best > -1e-4);
  CHECK(r.best == doctest::Approx(bowl(r.point)));

  const auto again = maximize(3, bowl, {{0.0, 0.0, 0.0}}, opts);
  CHECK(again.best == r.best);
  CHECK(again.point == r.point);

  // seeds are always evaluated
  const Objective spike = [](std::span<const double> x) { return x[0] == 7.0 ? 1.0 : 0.0; };
  opts.budget = 1;
  CHECK(maximize(1, spike, {{7.0}}, opts).best == 1.0);
}

TEST_CASE("parallel_map keeps index order and forwards exceptions") {
  const auto sq = parallel_map<long>(100, 4, [](std::size_t i) { return static_cast<long>(i * i); });
  for (std::size_t i = 0; i < sq.size(); ++i) CHECK(sq[i] == static_cast<long>(i * i));
  CHECK(parallel_map<int>(0, 3, [](std::size_t) { return 1; }).empty());
  CHECK_THROWS_AS(parallel_map<int>(10, 3,
                                    [](std::size_t i) -> int {
                                      if (i == 6) throw std::runtime_error("boom");
                                      return 0;
                                    }),
                  std::runtime_error);
}
