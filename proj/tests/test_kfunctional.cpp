#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/kfunctional.hpp"

using namespace tailspace;

namespace {

std::vector<double> gaussian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<double> v(n);
  for (double& x : v) x = g(rng);
  return v;
}

// Recomputes every certificate field from scratch.
void check_certificate(const KQuery& q, const KResult& r, double tol) {
  const auto& pair = q.pair;
  for (std::size_t i = 0; i < q.a.size(); ++i) CHECK(std::abs(r.a0[i] + r.a1[i] - q.a[i]) <= 1e-12 * (1 + std::abs(q.a[i])));
  const double primal = pair.a0_norm(r.a0) + q.t * pair.a1_norm(r.a1);
  CHECK(std::abs(primal - r.value) <= 1e-10 * std::max(1.0, r.value));
  CHECK(pair.a0_dual_norm(r.dual) <= 1 + 1e-10);
  CHECK(pair.a1_dual_norm(r.dual) <= q.t * (1 + 1e-10) + 1e-12);
  double pairing = 0.0;
  for (std::size_t i = 0; i < q.a.size(); ++i) pairing += q.a[i] * r.dual[i];
  CHECK(std::abs(pairing - r.pairing) <= 1e-10 * std::max(1.0, std::abs(pairing)));
  CHECK(r.gap >= 0.0);
  CHECK(r.value - pairing <= tol * std::max(1.0, r.value));
}

}  // namespace

TEST_CASE("K for (l2, l_inf)") {
  CHECK(k_exact({{5, 0, 0}, 10.0, InterpolationPair::l2_linf()}).value == doctest::Approx(5.0));
  for (int n : {1, 4, 9, 25}) {
    for (double t : {1.0, 2.0, 3.0, 7.0}) {
      const KQuery q{std::vector<double>(static_cast<std::size_t>(n), 1.0), t, InterpolationPair::l2_linf()};
      CHECK(k_exact(q).value == doctest::Approx(std::min(t, std::sqrt(n))).epsilon(1e-12));
    }
  }
  for (auto pair : {InterpolationPair::l2_linf(), InterpolationPair::l1_l2(), InterpolationPair::l2_lq(4.0)}) {
    CHECK(k_exact({{3, 4}, 0.0, pair}).value == doctest::Approx(0.0));
  }
}

TEST_CASE("exact pairs against the grid oracle") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> grid(-4, 4);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> a(1 + trial % 6);
    for (double& v : a) v = 0.5 * grid(rng);
    const double t = 0.25 + 0.5 * (trial % 7);
    const KQuery q2{a, t, InterpolationPair::l2_linf()};
    const KQuery q1{a, t, InterpolationPair::l1_l2()};
    const auto r2 = k_exact(q2);
    const auto r1 = k_exact(q1);
    CHECK(std::abs(r2.value - oracle::k_l2_linf_grid(a, t)) <= 1e-6);
    CHECK(std::abs(r1.value - oracle::k_l1_l2_grid(a, t)) <= 1e-6);
    check_certificate(q2, r2, 1e-12);
    check_certificate(q1, r1, 1e-12);

    // perturbing the decomposition never helps
    std::normal_distribution<double> g(0.0, 1e-3);
    for (int j = 0; j < 20; ++j) {
      auto a0 = r2.a0;
      for (double& v : a0) v += g(rng);
      std::vector<double> a1(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) a1[i] = a[i] - a0[i];
      CHECK(q2.pair.a0_norm(a0) + t * q2.pair.a1_norm(a1) >= r2.value - 1e-8);
    }
  }
}

TEST_CASE("K is homogeneous, nondecreasing and concave in t") {
  std::mt19937_64 rng(4);
  for (auto pair : {InterpolationPair::l2_linf(), InterpolationPair::l1_l2(), InterpolationPair::l2_lq(3.0)}) {
    const auto a = gaussian(12, rng);
    std::vector<double> vals;
    for (int i = 0; i <= 30; ++i) vals.push_back(k_exact({a, 0.2 * i, pair}, 1e-10).value);
    for (std::size_t i = 1; i < vals.size(); ++i) CHECK(vals[i] >= vals[i - 1] - 1e-9);
    for (std::size_t i = 2; i < vals.size(); ++i) CHECK(vals[i] - vals[i - 1] <= vals[i - 1] - vals[i - 2] + 1e-8);
    std::vector<double> scaled(a);
    for (double& v : scaled) v *= -2.5;
    const double base = k_exact({a, 1.7, pair}, 1e-10).value;
    CHECK(k_exact({scaled, 1.7, pair}, 1e-10).value == doctest::Approx(2.5 * base).epsilon(1e-8));
  }
}

TEST_CASE("(l2, l_q) certificates") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const double qexp = 2.5 + trial % 5;
    const KQuery q{gaussian(4 + trial, rng), 0.3 + 0.4 * (trial % 6), InterpolationPair::l2_lq(qexp)};
    const auto r = k_exact(q, 1e-7);
    CHECK(r.converged);
    check_certificate(q, r, 1e-7);
  }
  CHECK(InterpolationPair::bohnenblust_hille_dual(1).kind() == InterpolationPair::Kind::L2_Linf);
  CHECK(InterpolationPair::bohnenblust_hille_dual(2).q() == doctest::Approx(4.0));
  CHECK(InterpolationPair::bohnenblust_hille_dual(3).q() == doctest::Approx(3.0));
  CHECK_THROWS_AS(InterpolationPair::l2_lq(2.0), DomainError);
}

TEST_CASE("min-formula") {
  const std::vector<double> e1{1, 0, 0, 0};
  CHECK(k_minformula(e1, 3.0) == 1.0);
  CHECK(k_minformula(std::vector<double>(9, 1.0), 2.0) == 2.0);
  CHECK(k_minformula(std::vector<double>(5, 0.0), 2.0) == 0.0);
  CHECK(k_minformula_argmin(std::vector<double>(4, 1.0), 2.0) == 0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = gaussian(1 + trial % 20, rng);
    const double k = 0.5 * (1 + trial % 9);
    const double m = k_minformula(a, k);
    CHECK(m == doctest::Approx(oracle::minformula_enumerate(a, k)).epsilon(1e-12));
    CHECK(m >= k_exact({a, k, InterpolationPair::l2_linf()}).value - 1e-12);
  }
}

TEST_CASE("dual hit expression and the Hitczenko value") {
  const int n = 9;
  auto x1 = Spectrum::unit(n, 1);
  CHECK(thm12_rhs(x1, 2.0) == doctest::Approx(1 + 1 / std::sqrt(2.0)));
  std::vector<double> c(std::size_t{1} << n, 0.0);
  c[0] = -3.0;
  CHECK(thm12_rhs(Spectrum(n, c), 1.5) == doctest::Approx(3.0));
  std::vector<double> sum(std::size_t{1} << n, 0.0);
  for (int i = 0; i < n; ++i) sum[std::size_t{1} << i] = 1.0;
  CHECK(thm12_rhs(Spectrum(n, sum), kInf) == doctest::Approx(4.0));
  CHECK_THROWS_AS(thm12_rhs(x1, 1.0), DomainError);

  for (double r : {1.5, 2.0, 4.0}) CHECK(hitczenko_value(std::vector<double>{1, 0, 0}, r).value <= std::min(1.0, std::sqrt(conjugate_exponent(r))) + 1e-12);
  const std::vector<double> ones{1, 1, 1, 1};
  CHECK(hitczenko_value(ones, 2.0).value == doctest::Approx(oracle::k_l1_l2_grid(ones, std::sqrt(2.0), 1000000)).epsilon(1e-9));
  CHECK(hitczenko_value(std::vector<double>{0, 0}, 3.0).value == 0.0);
}

TEST_CASE("dual intersection norm") {
  const auto pair = InterpolationPair::l1_l2();
  CHECK(dual_intersection_norm(std::vector<double>{1, 0, 0}, 2.0, pair) == 1.0);
  CHECK(dual_intersection_norm(std::vector<double>{1, 1, 1, 1}, 2.0, pair) == 1.0);
  const std::vector<double> y{0.3, -2, 1};
  CHECK(dual_intersection_norm(std::vector<double>{0.6, -4, 2}, 0.7, pair) == doctest::Approx(2 * dual_intersection_norm(y, 0.7, pair)));
}
