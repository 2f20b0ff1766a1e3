#pragma once

// Report files. JSON documents look like
//   {"config": {...}, "records": [{"type": "check", ...}, {"type": "estimate", ...}]}
// Non-finite reals are written as "inf" / "-inf" and NaN as null. Runtimes are
// only written when the config asks for timing, so reruns are byte-identical.

#include <iosfwd>
#include <string>

#include "tailspace/config.hpp"
#include "tailspace/harness.hpp"
#include "tailspace/json_io.hpp"

namespace tailspace {

Json to_json(const SweepRow& row);
SweepRow sweep_row_from_json(const Json& j);

Json to_json(const CheckReport& report, bool timing = false);
CheckReport check_report_from_json(const Json& j);

Json to_json(const ConstantEstimate& est);
ConstantEstimate estimate_from_json(const Json& j);

Json report_document(const RunConfig& cfg, const VerifyOutcome& outcome);
VerifyOutcome outcome_from_document(const Json& doc);

// One row per instance: check,instance,label,n,k,d,r,lhs,rhs,ratio,status.
void write_csv(std::ostream& out, const VerifyOutcome& outcome);

// "PASS figiel instances=.. worst=.. window=[..]" (WARN for failed soft checks).
std::string summary_line(const CheckReport& report);

// Writes cfg.output + ".json" or ".csv" per cfg.format; returns the path.
std::string write_report(const RunConfig& cfg, const VerifyOutcome& outcome);

}  // namespace tailspace
