#pragma once

// Dense functions on the hypercube {-1,1}^n and their Walsh spectra.
//
// Mask convention (frozen, used by every file format): a point x is stored at
// the bitmask b whose bit i is set iff x_i = -1. A subset S of coordinates is
// stored at the bitmask whose bit i is set iff i is in S. The Walsh character
// is then w_S(x) = (-1)^popcount(S & x).
//
// The analysis direction carries the 2^-n factor, so Spectrum coefficients
// are exactly f^(S) = E[f w_S] under the uniform probability measure.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <span>
#include <vector>

namespace tailspace {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr int kDefaultCapacity = 14;
inline constexpr int kMaxCapacity = 24;

using Mask = std::uint32_t;

// Dense capacity n_max. Initialized from TAILSPACE_NMAX when set.
int capacity();
void set_capacity(int n_max);
// Throws CapacityError when n > capacity(), DomainError when n < 1.
void check_dimension(int n);

inline int popcount(Mask m) { return __builtin_popcount(m); }

// w_S(x) for masks S and x.
inline double walsh(Mask s, Mask x) { return (popcount(s & x) & 1) ? -1.0 : 1.0; }

class BooleanFunction {
 public:
  BooleanFunction(int n, std::vector<double> values);

  static BooleanFunction constant(int n, double c);
  static BooleanFunction character(int n, Mask s);

  template <class Fn>
  static BooleanFunction generate(int n, Fn&& value_at) {
    check_dimension(n);
    std::vector<double> v(std::size_t{1} << n);
    for (std::size_t x = 0; x < v.size(); ++x) v[x] = value_at(static_cast<Mask>(x));
    return BooleanFunction(n, std::move(v));
  }

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  double operator[](Mask x) const { return values_[x]; }
  std::span<const double> values() const { return values_; }

  BooleanFunction operator+(const BooleanFunction& other) const;
  BooleanFunction operator-(const BooleanFunction& other) const;
  BooleanFunction operator*(double c) const;

 private:
  int n_;
  std::vector<double> values_;
};

class Spectrum {
 public:
  Spectrum(int n, std::vector<double> coeffs);

  static Spectrum zero(int n);
  static Spectrum unit(int n, Mask s);

  int n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }
  double operator[](Mask s) const { return coeffs_[s]; }
  std::span<const double> coeffs() const { return coeffs_; }

  // Largest popcount carrying a coefficient with |c| > threshold; -1 for zero.
  int degree(double threshold = 0.0) const;

 private:
  int n_;
  std::vector<double> coeffs_;
};

// A nonempty-or-empty set of levels I within {0,...,n}. Not capacity-bound:
// symmetric solvers use it for n in the hundreds.
class SpectralSet {
 public:
  SpectralSet(int n, std::vector<bool> levels);
  SpectralSet(int n, std::initializer_list<int> levels);

  static SpectralSet from_levels(int n, const std::vector<int>& levels);
  static SpectralSet above(int n, int k);    // {k+1,...,n}: the tail space
  static SpectralSet at_most(int n, int k);  // {0,...,k}
  static SpectralSet exactly(int n, int k);  // {k}
  static SpectralSet all(int n);

  int n() const { return n_; }
  bool contains(int level) const {
    return level >= 0 && level <= n_ && levels_[static_cast<std::size_t>(level)];
  }
  bool empty() const;
  SpectralSet complement() const;
  std::vector<int> levels() const;

  // Masks S with |S| in the set, ascending. Dense n only.
  std::vector<Mask> masks() const;
  // Number of such masks, sum of C(n, l) over the set. Dense n only.
  std::size_t dimension() const;

  bool operator==(const SpectralSet&) const = default;

 private:
  int n_;
  std::vector<bool> levels_;
};

namespace detail {
// Unnormalized in-place Walsh-Hadamard butterfly; size must be a power of two.
void walsh_hadamard(std::span<double> data);
}  // namespace detail

Spectrum fwht(const BooleanFunction& f);
BooleanFunction inverse_fwht(const Spectrum& s);

// Keep the coefficients on levels in `levels`, zero the rest.
Spectrum project(const Spectrum& s, const SpectralSet& levels);
BooleanFunction project(const BooleanFunction& f, const SpectralSet& levels);

// L_p norm under the uniform probability measure; p = kInf for the max norm.
double norm(std::span<const double> values, double p);
double norm(const BooleanFunction& f, double p);

// E[f h].
double inner(const BooleanFunction& f, const BooleanFunction& h);
// sum_S f^(S) h^(S); equal to the spatial pairing by Parseval.
double inner(const Spectrum& f, const Spectrum& h);

// Conjugate exponent r* with 1/r + 1/r* = 1.
double conjugate_exponent(double r);

}  // namespace tailspace
