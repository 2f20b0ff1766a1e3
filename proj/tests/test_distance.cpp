#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tailspace/chebyshev.hpp"
#include "tailspace/distance.hpp"
#include "tailspace/errors.hpp"

using namespace tailspace;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) { return BooleanFunction(n, oracle::random_values(n, rng)); }

// Both witnesses re-evaluated by the oracle; value and lower must be what they claim.
void check_certified(const BooleanFunction& f, const SpectralSet& I, double p, const DistanceResult& r, double gap_tol) {
  const auto a = oracle::audit(f, I, p, r);
  const double scale = std::max(1.0, std::abs(r.value));
  CHECK(a.g_off_levels <= 1e-12 * scale);
  CHECK(a.h_on_levels <= 1e-10 * scale);
  CHECK(a.h_dual_norm <= 1 + 1e-10);
  CHECK(std::abs(a.primal - r.value) <= 1e-9 * scale);
  CHECK(std::abs(a.dual - r.lower) <= 1e-9 * scale);
  CHECK(r.lower <= r.value + 1e-12 * scale);
  CHECK(r.gap <= gap_tol * scale);
}

BooleanFunction elementary(int n, int l) { return profile_to_dense(sympoly_to_profile(SymmetricPoly::elementary(n, l))); }

}  // namespace

TEST_CASE("closed-form distances") {
  const auto w12 = BooleanFunction::character(3, 0b011);
  CHECK(distance(w12, SpectralSet(3, {2}), 2.0).value == doctest::Approx(0.0));
  const auto x1 = BooleanFunction::character(5, 0b1);
  CHECK(distance(x1, SpectralSet::above(5, 1), 2.0).value == doctest::Approx(1.0));

  const auto f1 = elementary(4, 1);
  const SpectralSet tail = SpectralSet::above(4, 1);
  const auto r = distance(f1, tail, 1.0);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  check_certified(f1, tail, 1.0, r, 1e-9);
  // h = (x_1 + ... + x_4)/4 lies off the tail with |h|_inf = 1
  CHECK(inner(f1, profile_to_dense(build_H(1, 4))) == doctest::Approx(1.0));

  CHECK(distance(f1, tail, 2.0).value == doctest::Approx(2.0));
  CHECK(distance(BooleanFunction::constant(4, -1.5), SpectralSet::above(4, 0), 1.0).value == doctest::Approx(1.5));
}

TEST_CASE("strong duality on random instances") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 2 + trial % 5;
    const int k = trial % n;
    const auto f = random_function(n, rng);
    const auto tail = SpectralSet::above(n, k);
    for (double p : {1.0, kInf}) {
      const auto r = distance(f, tail, p);
      CHECK(r.method == "simplex");
      check_certified(f, tail, p, r, 1e-8);
    }
    // a non-tail level set
    const SpectralSet odd = SpectralSet::from_levels(n, {1});
    check_certified(f, odd, 1.0, distance(f, odd, 1.0), 1e-8);
  }
}

TEST_CASE("first-order and smooth paths stay certified") {
  std::mt19937_64 rng(43);
  const auto f = random_function(5, rng);
  const auto tail = SpectralSet::above(5, 2);
  DistanceOptions fo;
  fo.simplex_budget = 0;
  fo.tol = 1e-6;
  const auto exact = distance(f, tail, 1.0);
  for (double p : {1.0, kInf}) {
    const auto r = distance(f, tail, p, fo);
    CHECK(r.method != "simplex");
    check_certified(f, tail, p, r, 1e-3);
    if (p == 1.0) CHECK(r.lower <= exact.value + 1e-9);
  }
  for (double p : {1.5, 3.0, 4.0}) {
    const auto r = distance(f, tail, p);
    check_certified(f, tail, p, r, 1e-7);
  }
}

TEST_CASE("monotone in p, equivariant in scale") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 3 + trial;
    const auto f = random_function(n, rng);
    const auto tail = SpectralSet::above(n, 1);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 4.0, kInf}) {
      const double v = distance(f, tail, p).value;
      CHECK(v >= prev - 1e-8);
      prev = v;
    }
    const double base = distance(f, tail, 1.0).value;
    CHECK(distance(f * -3.0, tail, 1.0).value == doctest::Approx(3.0 * base).epsilon(1e-9));
  }
}

TEST_CASE("Parseval path against the brute-force spectrum") {
  std::mt19937_64 rng(53);
  const int n = 7;
  const auto f = random_function(n, rng);
  const auto brute = oracle::naive_spectrum({f.values().begin(), f.values().end()}, n);
  const auto tail = SpectralSet::above(n, 3);
  double kept = 0.0;
  for (Mask s = 0; s < brute.size(); ++s) {
    if (popcount(s) <= 3) kept += brute[s] * brute[s];
  }
  const auto r = distance(f, tail, 2.0);
  CHECK(r.value == doctest::Approx(std::sqrt(kept)).epsilon(1e-12));
  CHECK(r.gap == 0.0);
}

TEST_CASE("symmetric LP agrees with the dense LP") {
  std::mt19937_64 rng(59);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 5;
    const int d = trial % 4;
    const int k = std::max(d, 1) + trial % 2;
    if (k >= n) continue;
    std::vector<double> alpha(static_cast<std::size_t>(d) + 1);
    for (double& v : alpha) v = g(rng);
    const SymmetricPoly poly(n, alpha);
    const auto dense = profile_to_dense(sympoly_to_profile(poly));
    const auto tail = SpectralSet::above(n, k);
    for (double p : {1.0, 2.0, kInf}) {
      const auto s = distance_symmetric(poly, tail, p);
      const auto full = distance(dense, tail, p);
      CHECK(s.value == doctest::Approx(full.value).epsilon(1e-7));
      CHECK(s.gap <= 1e-9 * std::max(1.0, s.value));
    }
  }
  CHECK_THROWS_AS(distance_symmetric(SymmetricPoly::elementary(6, 1), SpectralSet::above(6, 1), 1.5), DomainError);
}

TEST_CASE("symmetric values squeezed by H_{k,n}") {
  // E[f_2 H_{2,n}] = beta_2 C(n,2) = (4/n^2) C(n,2) = 2 - 2/n
  auto pairing = [](int d, int k, int n) {
    const auto h = build_H(k, n);
    double s = 0.0;
    for (int m = 0; m <= n; ++m) s += level_weight(n, m) * oracle::elem_sym_brute(n, d, m) * h[m];
    return s;
  };
  CHECK(pairing(2, 2, 10) == doctest::Approx(2.0 - 2.0 / 10));
  const auto r = distance_symmetric(SymmetricPoly::elementary(10, 2), SpectralSet::above(10, 2), 1.0);
  CHECK(r.value >= 1.8 - 1e-9);
  CHECK(r.value <= 2.0 + 1e-9);
  CHECK(r.lower >= pairing(2, 2, 10) - 1e-9);

  for (int n : {2, 5, 16, 33, 120}) {
    const auto s = distance_symmetric(SymmetricPoly::elementary(n, 1), SpectralSet::above(n, 1), 1.0);
    CHECK(std::abs(s.value - 1.0) <= 1e-8);
    CHECK(std::abs(s.lower - 1.0) <= 1e-8);
  }
  const auto c = distance_symmetric(SymmetricPoly(30, {-0.7}), SpectralSet::above(30, 0), 1.0);
  CHECK(c.value == doctest::Approx(0.7));
}

TEST_CASE("dual supremum") {
  const int n = 5;
  const auto f1 = elementary(n, 1);
  const auto ds = dual_sup(f1, 1);
  CHECK(ds.value >= inner(f1, profile_to_dense(build_H(1, n))) - 1e-9);
  CHECK(ds.value == doctest::Approx(distance(f1, SpectralSet::above(n, 1), 1.0).value).epsilon(1e-9));
  CHECK(dual_sup(BooleanFunction::character(n, 0b111), 2).value == doctest::Approx(0.0));

  // |E[f_d H_{k,n}]| / |H_{k,n}|_inf pattern for d = 2, k = 4
  const auto f2 = elementary(6, 2);
  const auto h = profile_to_dense(build_H(4, 6));
  CHECK(dual_sup(f2, 4).value >= std::abs(inner(f2, h)) / norm(h, kInf) - 1e-9);
}

TEST_CASE("input validation and JSON") {
  const auto f = BooleanFunction::constant(3, 1.0);
  CHECK_THROWS_AS(distance(f, SpectralSet::above(3, 1), 0.5), DomainError);
  CHECK_THROWS_AS(distance(f, SpectralSet::above(4, 1), 1.0), DomainError);
  CHECK_THROWS_AS(distance(f, SpectralSet::above(3, 3), 1.0), DomainError);
  const auto j = to_json(distance(BooleanFunction::character(3, 1), SpectralSet::above(3, 0), kInf));
  CHECK(j["p"] == "inf");
  for (const char* key : {"value", "lower", "gap", "levels", "primal_g", "dual_h"}) CHECK(j.contains(key));
}
