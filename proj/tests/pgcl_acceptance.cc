// One line per criterion: "criterion N: STATUS  title (counts, seconds)".
// Failing checks are listed under the line. Exit 1 if any criterion fails.

#include <iomanip>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "pgcl/harness.h"

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> ids;
  pgcl::AcceptanceOptions o;
  bool verbose = false;
  app.add_option("--criterion", ids, "criterion to run (repeatable); default all")
      ->check(CLI::Range(1, pgcl::kCriteria));
  app.add_option("--homology-bound", o.homology_bound, "largest order for brute-force homology")
      ->check(CLI::Range(std::size_t{1}, pgcl::kMaxHomologyBound));
  app.add_option("--seed", o.seed, "seed for the random matrices");
  app.add_option("--workers", o.workers, "workers for the parallel sweep")->check(CLI::Range(2u, 64u));
  app.add_flag("-v,--verbose", verbose, "print every check");
  CLI11_PARSE(app, argc, argv);
  if (ids.empty())
    for (int i = 1; i <= pgcl::kCriteria; ++i) ids.push_back(i);

  bool failed = false;
  for (int id : ids) {
    const pgcl::CriterionResult r = pgcl::run_criterion(id, o);
    std::cout << "criterion " << r.id << ": " << std::left << std::setw(7) << pgcl::status_name(r.status()) << " "
              << r.title << " (" << r.summary() << ", " << std::fixed << std::setprecision(1) << r.seconds
              << "s)\n";
    if (verbose) {
      pgcl::print_checks(std::cout, r);
    } else {
      for (const auto& c : r.checks)
        if (c.status == pgcl::Status::Fail)
          std::cout << "    FAIL " << c.name << ": expected " << c.expected << ", got " << c.got << "\n";
    }
    if (!r.note.empty()) std::cout << "    note: " << r.note << "\n";
    std::cout.flush();
    failed = failed || r.status() == pgcl::Status::Fail;
  }
  return failed ? 1 : 0;
}
