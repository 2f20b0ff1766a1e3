#pragma once

// RunConfig and its key-value text format:
//
//   # comment
//   seed = 7
//   n_max = 14
//   tol = 1e-9
//   jobs = 2
//   output = reports/run        (extension added per format)
//   format = json               (json | csv)
//   strict = false
//   window.ole = 0.03125, 32    (per-check soft windows)
//   n = 4..32                   (sweep ranges: a..b, a..b:step, or a,b,c)
//   k = 1
//   trials = 200
//
// Keys that are not recognized are rejected so typos surface immediately.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tailspace/json_io.hpp"

namespace tailspace {

struct Window {
  double lo = 1.0 / 32.0;
  double hi = 32.0;
  bool contains(double v) const { return v >= lo && v <= hi; }
};

struct RunConfig {
  std::uint64_t seed = 20240501;
  int n_max = capacity();
  double tol = 1e-9;
  int jobs = 1;
  std::string output;
  std::string format = "json";
  bool strict = false;
  bool timing = false;
  std::map<std::string, Window> windows;

  // Sweep parameters; empty means "use the check's default".
  std::vector<int> n, k, d;
  std::vector<double> r;
  std::optional<long> trials;
  std::optional<long> budget;
  std::optional<double> C, B, p, q;
  std::vector<double> a;      // Rademacher weights
  std::vector<double> alpha;  // symmetric coefficients

  Window window_for(const std::string& check, Window fallback = {}) const;
  void validate() const;
};

// Throws DomainError on malformed input, naming the offending line.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);
// Applies one key = value assignment.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// "4..32", "4..32:4", "4,8,16", "7".
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
// Accepts "inf" / "infinity".
double parse_exponent(const std::string& text);

Json to_json(const RunConfig& cfg);

}  // namespace tailspace
