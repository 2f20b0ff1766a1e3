#include "tailspace/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "tailspace/errors.hpp"

namespace tailspace {

namespace {

Json real(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double real_from(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw DomainError("bad real '" + s + "'");
  }
  return j.get<double>();
}

std::string csv_real(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string short_real(double v) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

}  // namespace

Json to_json(const SweepRow& row) {
  return {{"check", row.check_id}, {"instance", row.instance}, {"label", row.label}, {"n", row.n},
          {"k", row.k},           {"d", row.d},               {"r", real(row.r)},     {"lhs", real(row.lhs)},
          {"rhs", real(row.rhs)}, {"ratio", real(row.ratio)}, {"status", row.status}};
}

SweepRow sweep_row_from_json(const Json& j) {
  SweepRow row;
  row.check_id = j.at("check").get<std::string>();
  row.instance = j.at("instance").get<long>();
  row.label = j.at("label").get<std::string>();
  row.n = j.at("n").get<int>();
  row.k = j.at("k").get<int>();
  row.d = j.at("d").get<int>();
  row.r = real_from(j.at("r"));
  row.lhs = real_from(j.at("lhs"));
  row.rhs = real_from(j.at("rhs"));
  row.ratio = real_from(j.at("ratio"));
  row.status = j.at("status").get<std::string>();
  return row;
}

Json to_json(const CheckReport& r, bool timing) {
  Json rows = Json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  Json out = {{"type", "check"},
              {"check_id", r.check_id},
              {"instances", r.instances},
              {"skipped", r.skipped},
              {"worst_ratio", real(r.worst_ratio)},
              {"min_ratio", real(r.min_ratio)},
              {"max_ratio", real(r.max_ratio)},
              {"window", {real(r.window.lo), real(r.window.hi)}},
              {"hard", r.hard},
              {"verdict", r.verdict == Verdict::Pass ? "pass" : "fail"},
              {"witness", r.witness},
              {"params", r.params},
              {"notes", r.notes},
              {"rows", rows}};
  if (timing) out["runtime"] = r.runtime;
  return out;
}

CheckReport check_report_from_json(const Json& j) {
  CheckReport r;
  r.check_id = j.at("check_id").get<std::string>();
  r.instances = j.at("instances").get<long>();
  r.skipped = j.at("skipped").get<long>();
  r.worst_ratio = real_from(j.at("worst_ratio"));
  r.min_ratio = real_from(j.at("min_ratio"));
  r.max_ratio = real_from(j.at("max_ratio"));
  r.window = Window{real_from(j.at("window").at(0)), real_from(j.at("window").at(1))};
  r.hard = j.at("hard").get<bool>();
  const auto verdict = j.at("verdict").get<std::string>();
  if (verdict != "pass" && verdict != "fail") throw DomainError("bad verdict '" + verdict + "'");
  r.verdict = verdict == "pass" ? Verdict::Pass : Verdict::Fail;
  r.witness = j.at("witness");
  r.params = j.at("params");
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.runtime = j.value("runtime", 0.0);
  for (const auto& row : j.at("rows")) r.rows.push_back(sweep_row_from_json(row));
  return r;
}

Json to_json(const ConstantEstimate& e) {
  return {{"type", "estimate"}, {"quantity", e.quantity}, {"lower_bound", real(e.lower_bound)},
          {"params", e.params}, {"witness", e.witness},   {"notes", e.notes}};
}

ConstantEstimate estimate_from_json(const Json& j) {
  ConstantEstimate e;
  e.quantity = j.at("quantity").get<std::string>();
  e.lower_bound = real_from(j.at("lower_bound"));
  e.params = j.at("params");
  e.witness = j.at("witness");
  e.notes = j.at("notes").get<std::vector<std::string>>();
  return e;
}

Json report_document(const RunConfig& cfg, const VerifyOutcome& outcome) {
  Json records = Json::array();
  for (const auto& r : outcome.reports) records.push_back(to_json(r, cfg.timing));
  for (const auto& e : outcome.estimates) records.push_back(to_json(e));
  return {{"config", to_json(cfg)}, {"records", records}};
}

VerifyOutcome outcome_from_document(const Json& doc) {
  VerifyOutcome out;
  for (const auto& rec : doc.at("records")) {
    const auto type = rec.at("type").get<std::string>();
    if (type == "check") {
      out.reports.push_back(check_report_from_json(rec));
    } else if (type == "estimate") {
      out.estimates.push_back(estimate_from_json(rec));
    } else {
      throw DomainError("unknown record type '" + type + "'");
    }
  }
  return out;
}

void write_csv(std::ostream& out, const VerifyOutcome& outcome) {
  out << "check,instance,label,n,k,d,r,lhs,rhs,ratio,status\n";
  for (const auto& rep : outcome.reports) {
    for (const auto& row : rep.rows) {
      out << csv_field(row.check_id) << ',' << row.instance << ',' << csv_field(row.label) << ',' << row.n << ','
          << row.k << ',' << row.d << ',' << csv_real(row.r) << ',' << csv_real(row.lhs) << ',' << csv_real(row.rhs)
          << ',' << csv_real(row.ratio) << ',' << row.status << '\n';
    }
  }
}

std::string summary_line(const CheckReport& r) {
  const char* tag = r.verdict == Verdict::Pass ? "PASS" : (r.hard ? "FAIL" : "WARN");
  std::ostringstream os;
  os << tag << ' ' << r.check_id << " instances=" << r.instances << " skipped=" << r.skipped
     << " worst=" << short_real(r.worst_ratio) << " range=[" << short_real(r.min_ratio) << ", "
     << short_real(r.max_ratio) << "] window=[" << short_real(r.window.lo) << ", " << short_real(r.window.hi) << "]"
     << (r.hard ? " hard" : " soft");
  return os.str();
}

std::string write_report(const RunConfig& cfg, const VerifyOutcome& outcome) {
  const std::string path = cfg.output + (cfg.format == "csv" ? ".csv" : ".json");
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  if (cfg.format == "csv") {
    write_csv(out, outcome);
  } else {
    out << report_document(cfg, outcome).dump(2) << '\n';
  }
  return path;
}

}  // namespace tailspace
