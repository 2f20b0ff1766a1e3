#include <doctest.h>

#include <sstream>

#include "tailspace/config.hpp"
#include "tailspace/errors.hpp"
#include "tailspace/report.hpp"

using namespace tailspace;

TEST_CASE("config text format") {
  std::istringstream in(R"(# sweep
seed = 7
tol = 1e-8
jobs = 2
format = csv
strict = true
window.ole = 0.03125, 32
n = 4..10:2
k = 1,3
r = 1.5, inf
trials = 12
)");
  const auto cfg = parse_config(in);
  CHECK(cfg.seed == 7);
  CHECK(cfg.tol == 1e-8);
  CHECK(cfg.jobs == 2);
  CHECK(cfg.format == "csv");
  CHECK(cfg.strict);
  CHECK(cfg.n == std::vector<int>{4, 6, 8, 10});
  CHECK(cfg.k == std::vector<int>{1, 3});
  CHECK(cfg.r.size() == 2);
  CHECK(std::isinf(cfg.r[1]));
  CHECK(cfg.trials == 12);
  CHECK(cfg.window_for("ole").lo == 0.03125);
  CHECK(cfg.window_for("main", Window{0, 3}).hi == 3);

  std::istringstream bad("seed = 1\nsede = 2\n");
  try {
    parse_config(bad);
    FAIL("unknown key accepted");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  RunConfig c;
  CHECK_THROWS_AS(apply_config_entry(c, "tol", "-1"), DomainError);
  CHECK_THROWS_AS(apply_config_entry(c, "format", "xml"), DomainError);
  CHECK_THROWS_AS(parse_int_list("9..3"), DomainError);
  CHECK(parse_int_list("7") == std::vector<int>{7});
  CHECK(parse_exponent("infinity") == kInf);
  CHECK_THROWS_AS(parse_exponent("abc"), DomainError);
}

TEST_CASE("report records round-trip") {
  CheckReport rep;
  rep.check_id = "ole";
  rep.instances = 2;
  rep.skipped = 1;
  rep.min_ratio = 0.5;
  rep.max_ratio = kInf;
  rep.worst_ratio = kInf;
  rep.window = {0.25, 4};
  rep.hard = false;
  rep.verdict = Verdict::Fail;
  rep.witness = {{"a", {1, 2}}};
  rep.notes = {"note"};
  rep.rows.push_back(SweepRow{.check_id = "ole", .instance = 0, .n = 3, .k = 1, .lhs = 1, .rhs = 2, .ratio = 0.5, .status = "ok", .label = "simplex"});
  rep.runtime = 3.5;

  const auto j = to_json(rep);
  CHECK_FALSE(j.contains("runtime"));
  CHECK(to_json(rep, true).contains("runtime"));
  CHECK(j["max_ratio"] == "inf");
  const auto back = check_report_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(std::isinf(back.max_ratio));

  ConstantEstimate est{"B_d", 1.25, {{"d", 2}}, {{"kind", "bh"}}, {}};
  CHECK(to_json(estimate_from_json(to_json(est))) == to_json(est));

  RunConfig cfg;
  VerifyOutcome out{{rep}, {est}};
  const auto doc = report_document(cfg, out);
  CHECK(doc["config"]["seed"] == cfg.seed);
  const auto round = outcome_from_document(doc);
  CHECK(report_document(cfg, round) == doc);

  std::ostringstream csv;
  write_csv(csv, out);
  CHECK(csv.str().rfind("check,instance,label,n,k,d,r,lhs,rhs,ratio,status\n", 0) == 0);
  CHECK(summary_line(rep).rfind("WARN ole", 0) == 0);
  rep.hard = true;
  CHECK(summary_line(rep).rfind("FAIL ole", 0) == 0);
}
