#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/hypercube.hpp"
#include "tailspace/json_io.hpp"

using namespace tailspace;

namespace {

BooleanFunction random_function(int n, std::mt19937_64& rng) { return BooleanFunction(n, oracle::random_values(n, rng)); }

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("fwht of characters and constants") {
  const auto s = fwht(BooleanFunction::character(2, 0b01));
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 1.0);
  CHECK(s[2] == 0.0);
  CHECK(s[3] == 0.0);

  const auto c = fwht(BooleanFunction::constant(3, 1.0));
  CHECK(c[0] == 1.0);
  for (Mask m = 1; m < 8; ++m) CHECK(c[m] == 0.0);

  for (int n = 1; n <= 12; n += 3) {
    for (Mask sm : {Mask{0}, Mask{1}, (Mask{1} << n) - 1}) {
      const auto spec = fwht(BooleanFunction::character(n, sm));
      for (Mask t = 0; t < spec.size(); ++t) CHECK(spec[t] == (t == sm ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("inverse of unit spectra") {
  const auto one = inverse_fwht(Spectrum::unit(3, 0));
  for (Mask x = 0; x < 8; ++x) CHECK(one[x] == 1.0);
  const auto prod = inverse_fwht(Spectrum::unit(2, 0b11));
  CHECK(prod[0b00] == 1.0);
  CHECK(prod[0b01] == -1.0);
  CHECK(prod[0b10] == -1.0);
  CHECK(prod[0b11] == 1.0);
}

TEST_CASE("fwht matches the naive transform and round-trips") {
  std::mt19937_64 rng(11);
  for (int n : {1, 3, 6, 8}) {
    const auto f = random_function(n, rng);
    const auto s = fwht(f);
    const std::vector<double> vals(f.values().begin(), f.values().end());
    CHECK(max_diff(s.coeffs(), oracle::naive_spectrum(vals, n)) <= 1e-12);
    CHECK(max_diff(inverse_fwht(s).values(), f.values()) <= 1e-12);

    std::vector<double> coeffs = oracle::random_values(n, rng);
    const Spectrum sp(n, coeffs);
    CHECK(max_diff(inverse_fwht(sp).values(), oracle::naive_synthesis(coeffs, n)) <= 1e-12);
    CHECK(max_diff(fwht(inverse_fwht(sp)).coeffs(), coeffs) <= 1e-12);
  }
}

TEST_CASE("Parseval up to n = 12") {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 12; ++n) {
    const auto f = random_function(n, rng);
    const auto s = fwht(f);
    double energy = 0.0;
    for (double c : s.coeffs()) energy += c * c;
    const double mean_sq = std::pow(norm(f, 2.0), 2);
    CHECK(std::abs(energy - mean_sq) <= 1e-12 * mean_sq);
  }
}

TEST_CASE("projection") {
  const auto f = BooleanFunction::character(3, 0b001) + BooleanFunction::character(3, 0b011);
  const auto p = project(f, SpectralSet(3, {1}));
  CHECK(max_diff(p.values(), BooleanFunction::character(3, 0b001).values()) <= 1e-15);
  CHECK(max_diff(project(f, SpectralSet::all(3)).values(), f.values()) <= 1e-15);

  std::mt19937_64 rng(5);
  const int n = 6;
  const auto g = random_function(n, rng);
  const auto h = random_function(n, rng);
  const SpectralSet two(n, {2});
  const auto brute = oracle::naive_spectrum({g.values().begin(), g.values().end()}, n);
  double level2 = 0.0;
  for (Mask s = 0; s < brute.size(); ++s) {
    if (popcount(s) == 2) level2 += brute[s] * brute[s];
  }
  CHECK(std::pow(norm(project(g, two), 2.0), 2) == doctest::Approx(level2).epsilon(1e-12));

  // idempotent, self-adjoint
  const SpectralSet low = SpectralSet::at_most(n, 2);
  CHECK(max_diff(project(project(g, low), low).values(), project(g, low).values()) <= 1e-12);
  CHECK(inner(project(g, low), h) == doctest::Approx(inner(g, project(h, low))).epsilon(1e-12));
  // degree <= k against the tail
  CHECK(std::abs(inner(project(g, low), project(h, SpectralSet::above(n, 2)))) <= 1e-12);
}

TEST_CASE("norms") {
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) CHECK(norm(BooleanFunction::constant(4, -2.5), p) == doctest::Approx(2.5));
  const auto x12 = BooleanFunction::character(2, 0b01) + BooleanFunction::character(2, 0b10);
  CHECK(norm(x12, 1.0) == doctest::Approx(1.0));
  CHECK(norm(x12, kInf) == 2.0);

  std::mt19937_64 rng(9);
  const auto f = random_function(6, rng);
  CHECK(norm(f, 1.0) <= norm(f, 2.0));
  CHECK(norm(f, 2.0) <= norm(f, kInf));
  CHECK_THROWS_AS(norm(f, 0.5), DomainError);
}

TEST_CASE("pairings") {
  CHECK(inner(BooleanFunction::character(4, 3), BooleanFunction::character(4, 5)) == 0.0);
  std::mt19937_64 rng(13);
  const auto f = random_function(6, rng);
  const auto h = random_function(6, rng);
  CHECK(inner(f, f) == doctest::Approx(std::pow(norm(f, 2.0), 2)).epsilon(1e-12));
  CHECK(std::abs(inner(f, h) - inner(fwht(f), fwht(h))) <= 1e-12);
  CHECK_THROWS_AS(inner(f, random_function(5, rng)), DomainError);
}

TEST_CASE("spectral sets") {
  const auto tail = SpectralSet::above(5, 2);
  CHECK(tail.levels() == std::vector<int>{3, 4, 5});
  CHECK(tail.complement() == SpectralSet::at_most(5, 2));
  CHECK(SpectralSet::at_most(5, 2).dimension() == 1 + 5 + 10);
  CHECK(SpectralSet::exactly(4, 2).masks().size() == 6);
  CHECK(SpectralSet::above(3, 3).empty());
  CHECK(conjugate_exponent(2.0) == doctest::Approx(2.0));
  CHECK(conjugate_exponent(1.0) == kInf);
  CHECK(conjugate_exponent(kInf) == 1.0);
}

TEST_CASE("capacity") {
  const int saved = capacity();
  set_capacity(4);
  CHECK_THROWS_AS(BooleanFunction::constant(5, 1.0), CapacityError);
  CHECK_NOTHROW(BooleanFunction::constant(4, 1.0));
  set_capacity(saved);
  CHECK_THROWS_AS(check_dimension(0), DomainError);
}

TEST_CASE("dense JSON") {
  const auto f = BooleanFunction::character(2, 1) * 3.0;
  const auto back = std::get<BooleanFunction>(dense_from_json(to_json(f)));
  CHECK(max_diff(back.values(), f.values()) == 0.0);
  const auto s = std::get<Spectrum>(parse_dense(R"({"n": 1, "repr": "coeffs", "data": [0.5, -1]})"));
  CHECK(s[1] == -1.0);
  CHECK_THROWS_AS(parse_dense(R"({"n": 2, "repr": "values", "data": [1, 2, 3]})"), DomainError);
  CHECK_THROWS_AS(parse_dense(R"({"n": 2, "repr": "values", "data": [1, 2)"), DomainError);
  CHECK_THROWS_AS(parse_dense(R"({"n": 2, "repr": "bits", "data": [1, 2, 3, 4]})"), DomainError);
}
