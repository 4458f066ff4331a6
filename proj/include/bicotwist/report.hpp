#pragma once

#include "bicotwist/instances.hpp"

namespace bicotwist {

struct ReportInfo {
  std::string id;
  std::string value;
};

struct ReportMatrix {
  std::string id;
  std::vector<std::vector<std::string>> rows;
};

// Deterministically ordered verification report: check ids follow a fixed
// registry order, witnesses are exact strings (never floats), and rendering
// is byte-identical across runs. Timings are attached only on request and
// are excluded from the determinism guarantee.
struct Report {
  std::string instance;
  std::string command;
  std::vector<CheckResult> checks;
  std::vector<ReportInfo> infos;
  std::vector<ReportMatrix> matrices;
  std::vector<std::pair<std::string, long>> timings_ms;  // optional

  Index passed() const;
  Index failed() const;
  std::string to_text() const;
  std::string to_json() const;
};

Report run_verify(const BuiltInstance& b);
Report run_braiding(const BuiltInstance& b);
Report run_metrics(const BuiltInstance& b, std::optional<unsigned long> seed);
Report run_twist(const BuiltInstance& b);
Report run_all(const BuiltInstance& b, std::optional<unsigned long> seed);

struct RunOptions {
  std::string format = "text";  // "text" | "json"
  std::string out_path;         // additionally write here when nonempty
  bool timings = false;
  std::optional<unsigned long> seed;  // candidate-search order
};

// Runs a command ("verify", "braiding", "metrics", "twist", "all") against a
// builtin fixture name or an instance file path. Exit code: 0 when every
// check passes, 1 on check failures, 2 on parse/validation errors. The
// rendered report is appended to `rendered` when given.
int run_command(const std::string& command, const std::string& target, const RunOptions& options,
                std::string* rendered = nullptr);

}  // namespace bicotwist
