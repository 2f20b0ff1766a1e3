#include "tailspace/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tailspace/errors.hpp"

namespace tailspace {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + t + "'");
  }
  if (used != t.size()) throw DomainError("not a number: '" + t + "'");
  return v;
}

long parse_long(const std::string& text) {
  const std::string t = trim(text);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + t + "'");
  }
  if (used != t.size()) throw DomainError("not an integer: '" + t + "'");
  return v;
}

bool parse_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw DomainError("not a boolean: '" + t + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& raw : split(trim(text), ',')) {
    const std::string t = trim(raw);
    const auto dots = t.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_long(t)));
      continue;
    }
    const long lo = parse_long(t.substr(0, dots));
    std::string rest = t.substr(dots + 2);
    long step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_long(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const long hi = parse_long(rest);
    if (step < 1 || hi < lo) throw DomainError("empty or malformed range: '" + t + "'");
    for (long v = lo; v <= hi; v += step) out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw DomainError("empty list");
  return out;
}

double parse_exponent(const std::string& text) {
  std::string t = trim(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "infinity") return kInf;
  return parse_real(t);
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(trim(text), ',')) out.push_back(parse_exponent(item));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

void apply_config_entry(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  const std::string key = trim(raw_key);
  if (key == "seed") {
    cfg.seed = static_cast<std::uint64_t>(parse_long(value));
  } else if (key == "n_max") {
    cfg.n_max = static_cast<int>(parse_long(value));
  } else if (key == "tol") {
    cfg.tol = parse_real(value);
  } else if (key == "jobs") {
    cfg.jobs = static_cast<int>(parse_long(value));
  } else if (key == "output") {
    cfg.output = trim(value);
  } else if (key == "format") {
    cfg.format = trim(value);
  } else if (key == "strict") {
    cfg.strict = parse_bool(value);
  } else if (key == "timing") {
    cfg.timing = parse_bool(value);
  } else if (key.rfind("window.", 0) == 0) {
    const auto parts = parse_real_list(value);
    if (parts.size() != 2) throw DomainError("window needs 'lo, hi'");
    cfg.windows[key.substr(7)] = Window{parts[0], parts[1]};
  } else if (key == "n") {
    cfg.n = parse_int_list(value);
  } else if (key == "k") {
    cfg.k = parse_int_list(value);
  } else if (key == "d") {
    cfg.d = parse_int_list(value);
  } else if (key == "r") {
    cfg.r = parse_real_list(value);
  } else if (key == "trials") {
    cfg.trials = parse_long(value);
  } else if (key == "budget") {
    cfg.budget = parse_long(value);
  } else if (key == "C") {
    cfg.C = parse_real(value);
  } else if (key == "B") {
    cfg.B = parse_real(value);
  } else if (key == "p") {
    cfg.p = parse_exponent(value);
  } else if (key == "q") {
    cfg.q = parse_exponent(value);
  } else if (key == "a") {
    cfg.a = parse_real_list(value);
  } else if (key == "alpha") {
    cfg.alpha = parse_real_list(value);
  } else {
    throw DomainError("unknown config key '" + key + "'");
  }
  cfg.validate();
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(lineno) + ": expected key = value");
    try {
      apply_config_entry(cfg, line.substr(0, eq), line.substr(eq + 1));
    } catch (const DomainError& e) {
      throw DomainError("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  return parse_config(in);
}

Window RunConfig::window_for(const std::string& check, Window fallback) const {
  const auto it = windows.find(check);
  return it == windows.end() ? fallback : it->second;
}

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  if (n_max < 1 || n_max > kMaxCapacity) throw DomainError("n_max outside [1, " + std::to_string(kMaxCapacity) + "]");
  if (jobs < 1) throw DomainError("jobs must be at least 1");
  if (format != "json" && format != "csv") throw DomainError("format must be json or csv");
  for (const auto& [name, w] : windows) {
    if (!(w.lo <= w.hi)) throw DomainError("window." + name + " is empty");
  }
  if (trials && *trials < 1) throw DomainError("trials must be positive");
  if (budget && *budget < 1) throw DomainError("budget must be positive");
}

Json to_json(const RunConfig& cfg) {
  auto exponent = [](double v) { return std::isinf(v) ? Json("inf") : Json(v); };
  Json out;
  out["seed"] = cfg.seed;
  out["n_max"] = cfg.n_max;
  out["tol"] = cfg.tol;
  out["jobs"] = cfg.jobs;
  out["format"] = cfg.format;
  out["strict"] = cfg.strict;
  Json windows = Json::object();
  for (const auto& [name, w] : cfg.windows) windows[name] = {w.lo, w.hi};
  out["windows"] = windows;
  if (!cfg.n.empty()) out["n"] = cfg.n;
  if (!cfg.k.empty()) out["k"] = cfg.k;
  if (!cfg.d.empty()) out["d"] = cfg.d;
  if (!cfg.r.empty()) {
    Json r = Json::array();
    for (double v : cfg.r) r.push_back(exponent(v));
    out["r"] = r;
  }
  if (cfg.trials) out["trials"] = *cfg.trials;
  if (cfg.budget) out["budget"] = *cfg.budget;
  if (cfg.C) out["C"] = *cfg.C;
  if (cfg.B) out["B"] = *cfg.B;
  if (cfg.p) out["p"] = exponent(*cfg.p);
  if (cfg.q) out["q"] = exponent(*cfg.q);
  if (!cfg.a.empty()) out["a"] = cfg.a;
  if (!cfg.alpha.empty()) out["alpha"] = cfg.alpha;
  return out;
}

}  // namespace tailspace
