#include "pgcl/harness.h"

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "pgcl/capability.h"
#include "pgcl/errors.h"
#include "pgcl/serialize.h"

namespace pgcl {

// ---- report -------------------------------------------------------------------

nlohmann::json error_json(const std::exception& e) {
  const auto* pe = dynamic_cast<const Error*>(&e);
  nlohmann::json j = {{"schema", kSchema},
                      {"kind", "error"},
                      {"error", pe ? pe->kind() : "Exception"},
                      {"message", e.what()}};
  if (const auto* parse = dynamic_cast<const ParseError*>(&e)) j["position"] = parse->position();
  return j;
}

namespace {

nlohmann::json structure_json(const Group& g) {
  nlohmann::json prof = nlohmann::json::array();
  for (const auto& [o, c] : order_profile(g)) prof.push_back({o, c});
  const Subgroup z = center(g);
  nlohmann::json j = {{"abelian", g.is_abelian()},
                      {"center", abelian_invariants(subgroup_as_group(z)).factors()},
                      {"center_order", z.order()},
                      {"derived_order", derived_subgroup(g).order()},
                      {"abelianization", abelianization_invariants(g).factors()},
                      {"exponent", exponent(g)},
                      {"order_profile", prof}};
  if (group_prime(g) != 0) j["frattini_order"] = frattini(g).order();
  if (g.is_abelian()) j["invariants"] = abelian_invariants(g).factors();
  return j;
}

}  // namespace

nlohmann::json cmd_report(const std::string& text, const ReportOptions& opts, const MultiplierOracle* shared) {
  const ExprPtr e = parse_expr(text);
  const Group g = build(*e, opts.max_order);
  std::optional<MultiplierOracle> local;
  if (!shared) local.emplace(opts.homology_bound);
  const MultiplierOracle& oracle = shared ? *shared : *local;

  nlohmann::json j = {{"schema", kSchema}, {"kind", "report"}, {"expr", g.construction()}, {"order", g.order()}};
  const std::uint64_t p = group_prime(g);
  j["p"] = p ? nlohmann::json(p) : nlohmann::json(nullptr);
  j["structure"] = structure_json(g);

  const bool affordable = g.order() <= oracle.homology_bound();
  if (affordable) {
    const auto start = std::chrono::steady_clock::now();
    MultiplierResult mr;
    mr.expr = g.construction();
    mr.method = MultiplierMethod::Brute;
    mr.invariants = oracle.multiplier(g);
    mr.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    j["multiplier"] = to_json(mr, opts.timings);
  } else {
    j["multiplier"] = {{"expr", g.construction()},
                       {"skipped", "order " + std::to_string(g.order()) + " above homology bound " +
                                       std::to_string(oracle.homology_bound())}};
  }

  const CapabilityOptions cap{opts.strict};
  j["in_class"] = in_class(g);
  if (j["in_class"]) {
    VerifyOptions vo;
    vo.capability = cap;
    const ClassificationReport r = verify(g, oracle, vo);
    nlohmann::json cj = to_json(r);
    j["capability"] = cj.contains("capability") ? cj["capability"] : nlohmann::json(nullptr);
    cj.erase("capability");
    j["classification"] = cj;
  } else {
    j["capability"] = affordable ? to_json(is_capable(g, oracle, cap)) : nlohmann::json(nullptr);
    j["classification"] = nullptr;
  }
  return j;
}

// ---- sweep --------------------------------------------------------------------

void SweepManifest::validate() const {
  for (auto p : primes)
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (homology_bound > kMaxHomologyBound)
    throw InvalidArgument("homology bound may not exceed " + std::to_string(kMaxHomologyBound));
  if (max_order > kExtendedMaxOrder)
    throw InvalidArgument("max order may not exceed " + std::to_string(kExtendedMaxOrder));
  if (workers == 0) throw InvalidArgument("at least one worker is required");
  for (const auto& c : constructors)
    if (!kAllConstructors.count(c)) throw InvalidArgument("unknown constructor '" + c + "'");
}

std::vector<ExprPtr> enumerate_sweep(const SweepManifest& m) {
  m.validate();
  std::vector<ExprPtr> out;
  if (!m.constructors.count("ES")) return out;
  std::vector<std::uint64_t> primes = m.primes;
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (std::uint64_t p : primes) {
    for (unsigned mm = 1; ipow(p, 2 * mm + 1) <= m.max_order; ++mm) {
      for (Sign s : {Sign::Plus, Sign::Minus}) {
        std::vector<ExprPtr> bases{make_es(p, mm, s)};
        if (m.constructors.count("CProd") && expr_order(*bases[0]) * p <= m.max_order)
          bases.push_back(make_cprod(bases[0], make_cyc(p * p)));
        for (const ExprPtr& b : bases) {
          out.push_back(b);
          if (!m.constructors.count("Dir")) continue;
          for (unsigned k = 1; expr_order(*b) * ipow(p, k) <= m.max_order; ++k)
            out.push_back(make_dir(b, k == 1 ? make_cyc(p) : make_elemab(p, k)));
        }
      }
    }
  }
  return out;
}

int SweepResult::exit_code() const {
  if (capability_mismatches) return 2;
  if (errors) return 1;
  return 0;
}

SweepResult run_sweep(const SweepManifest& m) {
  const std::vector<ExprPtr> exprs = enumerate_sweep(m);
  const MultiplierOracle oracle(m.homology_bound);
  SweepResult res;
  res.rows.resize(exprs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= exprs.size()) return;
      SweepRow& row = res.rows[i];
      row.expr = to_string(*exprs[i]);
      try {
        row.report = verify(build(*exprs[i], kExtendedMaxOrder), oracle);
      } catch (const Error& e) {
        row.error = std::string(e.kind()) + ": " + e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(m.workers, static_cast<unsigned>(exprs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& row : res.rows) {
    if (row.error) ++res.errors;
    if (row.report && row.report->has_tag("capability-mismatch")) ++res.capability_mismatches;
  }
  return res;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> unique_tags(const ClassificationReport& r) {
  std::vector<std::string> tags;
  for (const auto& d : r.discrepancies)
    if (std::find(tags.begin(), tags.end(), d.tag) == tags.end()) tags.push_back(d.tag);
  return tags;
}

}  // namespace

std::string sweep_csv(const SweepResult& r) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const auto& row : r.rows) {
    out << csv_field(row.expr) << ",";
    if (!row.report) {
      out << ",,error,,,,," << csv_field("error:" + row.error->substr(0, row.error->find(':'))) << "\n";
      continue;
    }
    const ClassificationReport& c = *row.report;
    std::string tags;
    for (const auto& t : unique_tags(c)) tags += (tags.empty() ? "" : ";") + t;
    out << c.p << "," << c.n << "," << case_name(c.decomposition.kind) << ","
        << (c.predicted_capable ? "true" : "false") << ","
        << (c.oracle_capable ? (*c.oracle_capable ? "true" : "false") : "skipped") << ","
        << (c.multiplier ? std::to_string(c.multiplier->order()) : "") << ","
        << (c.center_formula ? std::to_string(*c.center_formula) : "") << "," << csv_field(tags) << "\n";
  }
  return out.str();
}

nlohmann::json sweep_json(const SweepManifest& m, const SweepResult& r) {
  nlohmann::json rows = nlohmann::json::array();
  std::map<std::string, std::size_t> tags;
  for (const auto& row : r.rows) {
    if (row.report) {
      rows.push_back(to_json(*row.report));
      for (const auto& t : unique_tags(*row.report)) ++tags[t];
    } else {
      rows.push_back({{"expr", row.expr}, {"error", *row.error}});
    }
  }
  // Worker count is left out on purpose: output must not depend on it.
  return {{"schema", kSchema},
          {"kind", "sweep"},
          {"manifest",
           {{"primes", m.primes},
            {"max_order", m.max_order},
            {"homology_bound", m.homology_bound},
            {"constructors", m.constructors}}},
          {"rows", rows},
          {"summary",
           {{"rows", r.rows.size()}, {"capability_mismatches", r.capability_mismatches}, {"errors", r.errors}, {"tags", tags}}}};
}

void write_sweep(const SweepManifest& m, const SweepResult& r, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto base = std::filesystem::path(dir);
  std::ofstream csv(base / "sweep.csv", std::ios::binary);
  csv << sweep_csv(r);
  std::ofstream js(base / "sweep.json", std::ios::binary);
  js << sweep_json(m, r).dump(2) << "\n";
  if (!csv || !js) throw InvalidArgument("cannot write sweep output to " + dir);
}

// ---- golden -------------------------------------------------------------------

nlohmann::json make_golden(const std::vector<std::string>& exprs, const ReportOptions& opts) {
  nlohmann::json reports = nlohmann::json::object();
  ReportOptions o = opts;
  o.timings = false;
  for (const auto& e : exprs) reports[e] = cmd_report(e, o);
  return {{"schema", kSchema}, {"kind", "golden"}, {"homology_bound", opts.homology_bound}, {"reports", reports}};
}

void check_golden(const nlohmann::json& golden, const ReportOptions& opts) {
  if (!golden.is_object() || golden.value("schema", "") != kSchema || golden.value("kind", "") != "golden" ||
      !golden.contains("reports") || !golden["reports"].is_object())
    throw GoldenMismatch("golden file is malformed");
  ReportOptions o = opts;
  o.timings = false;
  if (golden.contains("homology_bound")) o.homology_bound = golden["homology_bound"].get<std::size_t>();
  for (const auto& [expr, want] : golden["reports"].items()) {
    nlohmann::json got;
    try {
      got = cmd_report(expr, o);
    } catch (const std::exception& e) {
      got = error_json(e);
    }
    if (got != want) throw GoldenMismatch("report for '" + expr + "' differs from the golden file");
  }
}

}  // namespace pgcl
