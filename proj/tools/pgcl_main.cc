// pgcl: report, sweep, selftest, build, golden.
//
// Exit codes: 0 ok, 1 error, 2 capability mismatch, 3 golden mismatch.
// PGCL_HOMOLOGY_BOUND and PGCL_WORKERS override the defaults; flags win.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pgcl/errors.h"
#include "pgcl/harness.h"
#include "pgcl/serialize.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitGolden = 3;

template <class T>
T env_or(const char* name, T fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(v, &used);
    if (used != std::string(v).size()) throw std::invalid_argument(name);
    return static_cast<T>(x);
  } catch (const std::exception&) {
    throw pgcl::InvalidArgument(std::string(name) + " is not a non-negative integer: " + v);
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw pgcl::InvalidArgument("cannot open " + path + " for writing");
  out << text;
  if (!out) throw pgcl::InvalidArgument("write to " + path + " failed");
}

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pgcl::InvalidArgument("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw pgcl::SchemaError(path + ": " + e.what());
  }
}

struct Args {
  std::string expr;
  std::string json_out;
  std::string out;
  std::string golden;
  std::vector<std::uint64_t> primes{2};
  std::vector<std::string> constructors;
  std::vector<int> criteria;
  std::size_t max_order = pgcl::kDefaultMaxOrder;
  std::size_t sweep_max_order = 64;
  std::size_t bound = 0;
  unsigned workers = 0;
  std::uint64_t seed = pgcl::AcceptanceOptions{}.seed;
  bool timings = false;
  bool strict = false;
};

int run_report(const Args& a, std::size_t bound) {
  pgcl::ReportOptions o;
  o.homology_bound = bound;
  o.max_order = a.max_order;
  o.timings = a.timings;
  o.strict = a.strict;
  const std::string text = pgcl::cmd_report(a.expr, o).dump(2) + "\n";
  if (a.json_out.empty())
    std::cout << text;
  else
    write_file(a.json_out, text);
  return kExitOk;
}

int run_sweep(const Args& a, std::size_t bound, unsigned workers) {
  pgcl::SweepManifest m;
  m.primes = a.primes;
  m.max_order = a.sweep_max_order;
  m.homology_bound = bound;
  m.workers = workers;
  if (!a.constructors.empty() && !(a.constructors.size() == 1 && a.constructors[0] == "none"))
    m.constructors = {a.constructors.begin(), a.constructors.end()};
  else if (!a.constructors.empty())
    m.constructors.clear();
  m.validate();
  const pgcl::SweepResult r = pgcl::run_sweep(m);
  if (a.out.empty())
    std::cout << pgcl::sweep_csv(r);
  else
    pgcl::write_sweep(m, r, a.out);
  std::cerr << r.rows.size() << " rows, " << r.capability_mismatches << " capability mismatches, " << r.errors
            << " errors\n";
  return r.exit_code();
}

int run_selftest(const Args& a, std::size_t bound, unsigned workers) {
  pgcl::AcceptanceOptions o;
  o.homology_bound = bound;
  o.seed = a.seed;
  o.workers = std::max(2u, workers);
  std::vector<int> ids = a.criteria;
  if (ids.empty())
    for (int i = 1; i <= pgcl::kCriteria; ++i) ids.push_back(i);
  bool failed = false;
  for (int id : ids) {
    const pgcl::CriterionResult r = pgcl::run_criterion(id, o);
    std::cout << "criterion " << r.id << ": " << r.title << "\n";
    pgcl::print_checks(std::cout, r);
    std::cout << "  => " << pgcl::status_name(r.status()) << " (" << r.summary() << ")\n";
    if (!r.note.empty()) std::cout << "  note: " << r.note << "\n";
    failed = failed || r.status() == pgcl::Status::Fail;
  }
  if (!a.golden.empty()) {
    pgcl::ReportOptions ro;
    ro.homology_bound = std::min<std::size_t>(bound, pgcl::kDefaultHomologyBound);
    try {
      pgcl::check_golden(read_json(a.golden), ro);
      std::cout << "golden " << a.golden << ": PASS\n";
    } catch (const pgcl::GoldenMismatch& e) {
      std::cout << "golden " << a.golden << ": FAIL (" << e.what() << ")\n";
      return kExitGolden;
    }
  }
  return failed ? kExitError : kExitOk;
}

int run_golden(const Args& a, const std::vector<std::string>& exprs, std::size_t bound) {
  pgcl::ReportOptions o;
  o.homology_bound = bound;
  o.max_order = a.max_order;
  const std::string text = pgcl::make_golden(exprs, o).dump(2) + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return kExitOk;
}

int run_build(const Args& a) {
  const pgcl::Group g = pgcl::build(*pgcl::parse_expr(a.expr), a.max_order);
  const std::string text = pgcl::group_to_json(g).dump() + "\n";
  if (a.out.empty())
    std::cout << text;
  else
    write_file(a.out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-group capability toolkit"};
  app.require_subcommand(1);
  Args a;
  std::size_t bound_flag = 0;
  unsigned workers_flag = 0;

  auto* report = app.add_subcommand("report", "structure, multiplier and capability of one group");
  report->add_option("expr", a.expr, "group expression, e.g. \"D8 x Cyc(2)\"")->required();
  report->add_option("--json", a.json_out, "write the report here instead of stdout");
  report->add_flag("--timings", a.timings, "include elapsed_ms fields");
  report->add_flag("--strict", a.strict, "also test non-central elements via normal closures");
  report->add_option("--homology-bound", bound_flag, "largest order for brute-force homology");
  report->add_option("--max-order", a.max_order, "largest group the builder accepts");

  auto* sweep = app.add_subcommand("sweep", "verify every in-class group up to an order");
  sweep->add_option("--p", a.primes, "primes, comma separated")->delimiter(',');
  sweep->add_option("--max-order", a.sweep_max_order, "largest group order");
  sweep->add_option("--homology-bound", bound_flag, "largest order for brute-force homology");
  sweep->add_option("--out", a.out, "directory for sweep.csv and sweep.json (default: CSV on stdout)");
  sweep->add_option("--workers", workers_flag, "worker threads");
  sweep->add_option("--constructors", a.constructors, "subset of ES,CProd,Dir, or none")->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "run the acceptance checks");
  selftest->add_option("--seed", a.seed, "seed for randomized checks");
  selftest->add_option("--golden", a.golden, "golden report file to compare against");
  selftest->add_option("--homology-bound", bound_flag, "largest order for brute-force homology");
  selftest->add_option("--criteria", a.criteria, "subset of criteria, comma separated")
      ->delimiter(',')
      ->check(CLI::Range(1, pgcl::kCriteria));
  selftest->add_option("--workers", workers_flag, "worker threads for the determinism check");

  auto* build = app.add_subcommand("build", "write a group's multiplication table as JSON");
  build->add_option("expr", a.expr, "group expression")->required();
  build->add_option("--out", a.out, "output file (default: stdout)");
  build->add_option("--max-order", a.max_order, "largest group the builder accepts");

  std::vector<std::string> golden_exprs{"Q8", "D8", "Cyc(1)", "D8 . Cyc(4)", "ES(3,1,-)"};
  auto* golden = app.add_subcommand("golden", "write reference reports for selftest --golden");
  golden->add_option("exprs", golden_exprs, "expressions to record");
  golden->add_option("--out", a.out, "output file (default: stdout)");
  golden->add_option("--homology-bound", bound_flag, "largest order for brute-force homology");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::size_t bound = bound_flag ? bound_flag
                                         : env_or<std::size_t>("PGCL_HOMOLOGY_BOUND",
                                                               selftest->parsed() ? pgcl::kMaxHomologyBound
                                                                                  : pgcl::kDefaultHomologyBound);
    const unsigned workers = workers_flag ? workers_flag : env_or<unsigned>("PGCL_WORKERS", 1u);
    if (report->parsed()) return run_report(a, bound);
    if (sweep->parsed()) return run_sweep(a, bound, workers);
    if (selftest->parsed()) return run_selftest(a, bound, workers);
    if (golden->parsed()) return run_golden(a, golden_exprs, bound);
    return run_build(a);
  } catch (const std::exception& e) {
    std::cout << pgcl::error_json(e).dump(2) << "\n";
    return kExitError;
  }
}
