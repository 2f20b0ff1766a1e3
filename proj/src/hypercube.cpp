#include "tailspace/hypercube.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

#include "tailspace/errors.hpp"

namespace tailspace {

namespace {

int initial_capacity() {
  if (const char* env = std::getenv("TAILSPACE_NMAX")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= kMaxCapacity) return static_cast<int>(v);
  }
  return kDefaultCapacity;
}

std::atomic<int>& capacity_slot() {
  static std::atomic<int> slot{initial_capacity()};
  return slot;
}

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite entry");
  }
}

void require_length(int n, std::size_t len, const char* what) {
  check_dimension(n);
  if (len != (std::size_t{1} << n)) {
    throw DomainError(std::string(what) + ": expected 2^" + std::to_string(n) + " entries, got " +
                      std::to_string(len));
  }
}

}  // namespace

int capacity() { return capacity_slot().load(std::memory_order_relaxed); }

void set_capacity(int n_max) {
  if (n_max < 1 || n_max > kMaxCapacity) {
    throw DomainError("capacity must lie in [1, " + std::to_string(kMaxCapacity) + "]");
  }
  capacity_slot().store(n_max, std::memory_order_relaxed);
}

void check_dimension(int n) {
  if (n < 1) throw DomainError("dimension must be at least 1");
  if (n > capacity()) throw CapacityError(n, capacity());
}

// ---------------------------------------------------------------------------

BooleanFunction::BooleanFunction(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  require_length(n_, values_.size(), "BooleanFunction");
  require_finite(values_, "BooleanFunction");
}

BooleanFunction BooleanFunction::constant(int n, double c) {
  check_dimension(n);
  return BooleanFunction(n, std::vector<double>(std::size_t{1} << n, c));
}

BooleanFunction BooleanFunction::character(int n, Mask s) {
  return generate(n, [s](Mask x) { return walsh(s, x); });
}

BooleanFunction BooleanFunction::operator+(const BooleanFunction& other) const {
  if (other.n_ != n_) throw DomainError("dimension mismatch");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return BooleanFunction(n_, std::move(v));
}

BooleanFunction BooleanFunction::operator-(const BooleanFunction& other) const {
  if (other.n_ != n_) throw DomainError("dimension mismatch");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= other.values_[i];
  return BooleanFunction(n_, std::move(v));
}

BooleanFunction BooleanFunction::operator*(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return BooleanFunction(n_, std::move(v));
}

Spectrum::Spectrum(int n, std::vector<double> coeffs) : n_(n), coeffs_(std::move(coeffs)) {
  require_length(n_, coeffs_.size(), "Spectrum");
  require_finite(coeffs_, "Spectrum");
}

Spectrum Spectrum::zero(int n) {
  check_dimension(n);
  return Spectrum(n, std::vector<double>(std::size_t{1} << n, 0.0));
}

Spectrum Spectrum::unit(int n, Mask s) {
  check_dimension(n);
  std::vector<double> c(std::size_t{1} << n, 0.0);
  if (s >= c.size()) throw DomainError("subset mask out of range");
  c[s] = 1.0;
  return Spectrum(n, std::move(c));
}

int Spectrum::degree(double threshold) const {
  int deg = -1;
  for (std::size_t s = 0; s < coeffs_.size(); ++s) {
    if (std::abs(coeffs_[s]) > threshold) deg = std::max(deg, popcount(static_cast<Mask>(s)));
  }
  return deg;
}

// ---------------------------------------------------------------------------

SpectralSet::SpectralSet(int n, std::vector<bool> levels) : n_(n), levels_(std::move(levels)) {
  if (n_ < 0) throw DomainError("SpectralSet: negative dimension");
  if (levels_.size() != static_cast<std::size_t>(n_) + 1) {
    throw DomainError("SpectralSet: level bitset must have n+1 entries");
  }
}

SpectralSet::SpectralSet(int n, std::initializer_list<int> levels)
    : SpectralSet(from_levels(n, std::vector<int>(levels))) {}

SpectralSet SpectralSet::from_levels(int n, const std::vector<int>& levels) {
  if (n < 0) throw DomainError("SpectralSet: negative dimension");
  std::vector<bool> bits(static_cast<std::size_t>(n) + 1, false);
  for (int l : levels) {
    if (l < 0 || l > n) {
      throw DomainError("SpectralSet: level " + std::to_string(l) + " outside [0, n]");
    }
    bits[static_cast<std::size_t>(l)] = true;
  }
  return SpectralSet(n, std::move(bits));
}

SpectralSet SpectralSet::above(int n, int k) {
  std::vector<bool> bits(static_cast<std::size_t>(n) + 1, false);
  for (int l = std::max(k + 1, 0); l <= n; ++l) bits[static_cast<std::size_t>(l)] = true;
  return SpectralSet(n, std::move(bits));
}

SpectralSet SpectralSet::at_most(int n, int k) {
  std::vector<bool> bits(static_cast<std::size_t>(n) + 1, false);
  for (int l = 0; l <= std::min(k, n); ++l) bits[static_cast<std::size_t>(l)] = true;
  return SpectralSet(n, std::move(bits));
}

SpectralSet SpectralSet::exactly(int n, int k) { return from_levels(n, {k}); }

SpectralSet SpectralSet::all(int n) {
  return SpectralSet(n, std::vector<bool>(static_cast<std::size_t>(n) + 1, true));
}

bool SpectralSet::empty() const {
  return std::none_of(levels_.begin(), levels_.end(), [](bool b) { return b; });
}

SpectralSet SpectralSet::complement() const {
  std::vector<bool> bits(levels_.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = !levels_[i];
  return SpectralSet(n_, std::move(bits));
}

std::vector<int> SpectralSet::levels() const {
  std::vector<int> out;
  for (int l = 0; l <= n_; ++l) {
    if (levels_[static_cast<std::size_t>(l)]) out.push_back(l);
  }
  return out;
}

std::vector<Mask> SpectralSet::masks() const {
  check_dimension(n_);
  std::vector<Mask> out;
  const Mask size = Mask{1} << n_;
  for (Mask s = 0; s < size; ++s) {
    if (levels_[static_cast<std::size_t>(popcount(s))]) out.push_back(s);
  }
  return out;
}

std::size_t SpectralSet::dimension() const {
  check_dimension(n_);
  std::size_t count = 0;
  const Mask size = Mask{1} << n_;
  for (Mask s = 0; s < size; ++s) {
    if (levels_[static_cast<std::size_t>(popcount(s))]) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------

namespace detail {

void walsh_hadamard(std::span<double> data) {
  const std::size_t size = data.size();
  for (std::size_t half = 1; half < size; half <<= 1) {
    for (std::size_t block = 0; block < size; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const double a = data[i];
        const double b = data[i + half];
        data[i] = a + b;
        data[i + half] = a - b;
      }
    }
  }
}

}  // namespace detail

Spectrum fwht(const BooleanFunction& f) {
  std::vector<double> c(f.values().begin(), f.values().end());
  detail::walsh_hadamard(c);
  const double scale = std::ldexp(1.0, -f.n());
  for (double& x : c) x *= scale;
  return Spectrum(f.n(), std::move(c));
}

BooleanFunction inverse_fwht(const Spectrum& s) {
  std::vector<double> v(s.coeffs().begin(), s.coeffs().end());
  detail::walsh_hadamard(v);
  return BooleanFunction(s.n(), std::move(v));
}

Spectrum project(const Spectrum& s, const SpectralSet& levels) {
  if (levels.n() != s.n()) throw DomainError("project: dimension mismatch");
  if (levels.empty()) throw DomainError("project: empty level set");
  std::vector<double> c(s.coeffs().begin(), s.coeffs().end());
  for (std::size_t m = 0; m < c.size(); ++m) {
    if (!levels.contains(popcount(static_cast<Mask>(m)))) c[m] = 0.0;
  }
  return Spectrum(s.n(), std::move(c));
}

BooleanFunction project(const BooleanFunction& f, const SpectralSet& levels) {
  return inverse_fwht(project(fwht(f), levels));
}

double norm(std::span<const double> values, double p) {
  if (!(p >= 1.0)) throw DomainError("norm: exponent must be >= 1");
  if (values.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return s / static_cast<double>(values.size());
  }
  if (p == 2.0) {
    double s = 0.0;
    for (double v : values) s += v * v;
    return std::sqrt(s / static_cast<double>(values.size()));
  }
  // Scale by the max to keep |v|^p representable for large p.
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : values) s += std::pow(std::abs(v) / m, p);
  return m * std::pow(s / static_cast<double>(values.size()), 1.0 / p);
}

double norm(const BooleanFunction& f, double p) { return norm(f.values(), p); }

double inner(const BooleanFunction& f, const BooleanFunction& h) {
  if (f.n() != h.n()) throw DomainError("inner: dimension mismatch");
  double s = 0.0;
  for (std::size_t x = 0; x < f.size(); ++x) s += f.values()[x] * h.values()[x];
  return s / static_cast<double>(f.size());
}

double inner(const Spectrum& f, const Spectrum& h) {
  if (f.n() != h.n()) throw DomainError("inner: dimension mismatch");
  double s = 0.0;
  for (std::size_t m = 0; m < f.size(); ++m) s += f.coeffs()[m] * h.coeffs()[m];
  return s;
}

double conjugate_exponent(double r) {
  if (!(r >= 1.0)) throw DomainError("conjugate_exponent: exponent must be >= 1");
  if (r == 1.0) return kInf;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

}  // namespace tailspace
