#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "pgcl/classifier.h"
#include "pgcl/expr.h"
#include "pgcl/multiplier.h"

namespace pgcl {

// ---- report -------------------------------------------------------------------

struct ReportOptions {
  std::size_t homology_bound = kDefaultHomologyBound;
  std::size_t max_order = kDefaultMaxOrder;
  bool timings = false;
  bool strict = false;
};

// Structure, multiplier, capability and (for in-class groups) the
// classification of one expression. Deterministic unless timings are on.
nlohmann::json cmd_report(const std::string& expr, const ReportOptions& opts = {},
                          const MultiplierOracle* oracle = nullptr);

// {schema, kind: "error", error, message}
nlohmann::json error_json(const std::exception& e);

// ---- sweep --------------------------------------------------------------------

inline const std::set<std::string> kAllConstructors = {"ES", "CProd", "Dir"};

struct SweepManifest {
  std::vector<std::uint64_t> primes{2};
  std::size_t max_order = 64;
  std::size_t homology_bound = kDefaultHomologyBound;
  // "ES" (extraspecial H), "CProd" (H . Cyc(p^2)), "Dir" (x Cyc(p), x ElemAb(p,k)).
  std::set<std::string> constructors = kAllConstructors;
  unsigned workers = 1;

  // Throws InvalidArgument.
  void validate() const;
};

// In-class expressions, in a fixed order that depends only on the manifest.
std::vector<ExprPtr> enumerate_sweep(const SweepManifest& m);

struct SweepRow {
  std::string expr;
  std::optional<ClassificationReport> report;
  std::optional<std::string> error;  // "Kind: message"
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::size_t capability_mismatches = 0;
  std::size_t errors = 0;

  // 0 ok, 1 error, 2 capability mismatch.
  int exit_code() const;
};

inline constexpr const char* kSweepCsvHeader =
    "expr,p,n,case,predicted,oracle,multiplier_order,center_formula,discrepancy_tags";

SweepResult run_sweep(const SweepManifest& m);
std::string sweep_csv(const SweepResult& r);
nlohmann::json sweep_json(const SweepManifest& m, const SweepResult& r);
// Writes sweep.csv and sweep.json into `dir` (created if missing).
void write_sweep(const SweepManifest& m, const SweepResult& r, const std::string& dir);

// ---- acceptance ---------------------------------------------------------------

enum class Status { Pass, Fail, Skipped };
const char* status_name(Status s);

struct Check {
  std::string name;
  std::string expected;
  std::string got;
  Status status = Status::Pass;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0.0;
  std::string note;

  // Fail if any check failed; Skipped if every check was skipped.
  Status status() const;
  std::string summary() const;
};

struct AcceptanceOptions {
  std::size_t homology_bound = kMaxHomologyBound;
  std::uint64_t seed = 20240611;
  unsigned workers = 2;
};

inline constexpr int kCriteria = 9;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts);

// One row per check: check, expected, got, status.
void print_checks(std::ostream& out, const CriterionResult& r);

// Golden reports: {schema, kind: "golden", reports: {expr: report}}. Throws
// GoldenMismatch naming the first differing expression.
void check_golden(const nlohmann::json& golden, const ReportOptions& opts);
nlohmann::json make_golden(const std::vector<std::string>& exprs, const ReportOptions& opts);

}  // namespace pgcl
