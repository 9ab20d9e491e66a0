#include <gtest/gtest.h>

#include <fstream>

#include "pgcl/errors.h"
#include "pgcl/harness.h"

using namespace pgcl;

namespace {

const std::vector<std::string> kGrammarCorpus = {
    "Cyc(1)",      "Cyc(12)",        "ElemAb(2,3)",           "ES(3,1,+)",           "ES(2,2,-)",
    "D8",          "Q8",             "ES(3,1,+) x Cyc(3)",    "ES(2,1,+) . Cyc(4)",  "D8 . Cyc(4) x Cyc(2)",
    "(D8 x Q8)",   "D8 x (Q8 x D8)", "((Q8)) . Cyc(8)",       "D8 x Cyc(2) x Cyc(2)", "Q8 . Cyc(4) . Cyc(4)",
    "ES(2,1,-)",   "  D8   x Cyc(2) ", "(D8 . Cyc(4)) x (Q8 . Cyc(4))"};

nlohmann::json load(const std::string& path) {
  std::ifstream in(path);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST(Parse, Examples) {
  const ExprPtr a = parse_expr("ES(3,1,+) x Cyc(3)");
  EXPECT_EQ(a->kind, GroupExpr::Kind::Dir);
  EXPECT_EQ(a->left->kind, GroupExpr::Kind::ES);
  EXPECT_EQ(a->right->kind, GroupExpr::Kind::Cyc);
  EXPECT_EQ(a->right->a, 3u);
  const ExprPtr b = parse_expr("ES(2,1,+) . Cyc(4)");
  EXPECT_EQ(b->kind, GroupExpr::Kind::CProd);
  EXPECT_EQ(b->left->kind, GroupExpr::Kind::D8);
  EXPECT_EQ(to_string(*b), "D8 . Cyc(4)");
  EXPECT_EQ(*parse_expr("ES(2,1,-)"), *parse_expr("Q8"));
  try {
    parse_expr("ES(2,1,?)");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
}

TEST(Parse, Precedence) {
  const ExprPtr e = parse_expr("D8 . Cyc(4) x Cyc(2)");
  EXPECT_EQ(e->kind, GroupExpr::Kind::Dir);
  EXPECT_EQ(e->left->kind, GroupExpr::Kind::CProd);
  EXPECT_EQ(to_string(*parse_expr("D8 x (Q8 x D8)")), "D8 x (Q8 x D8)");
  EXPECT_EQ(to_string(*parse_expr("(D8 x Q8) x D8")), "D8 x Q8 x D8");
}

TEST(Parse, RoundTripIsIdempotent) {
  for (const auto& s : kGrammarCorpus) {
    const ExprPtr once = parse_expr(s);
    const std::string printed = to_string(*once);
    const ExprPtr twice = parse_expr(printed);
    EXPECT_EQ(*once, *twice) << s;
    EXPECT_EQ(to_string(*twice), printed) << s;
  }
}

TEST(Parse, Errors) {
  for (const char* bad : {"", "Cyc(", "Cyc(0)", "ES(4,1,+)", "D8 x", "D8 y Q8", "(D8", "ElemAb(2)", "Q8)"})
    EXPECT_THROW(parse_expr(bad), Error) << bad;
  EXPECT_THROW(parse_expr("D8 . Q8"), SemanticError);
  EXPECT_THROW(parse_expr("D8 . Cyc(6)"), SemanticError);
}

TEST(Build, ConstructionIsCanonicalText) {
  const Group g = build(*parse_expr("(D8 . Cyc(4)) x Cyc(2)"));
  EXPECT_EQ(g.construction(), "D8 . Cyc(4) x Cyc(2)");
  EXPECT_EQ(g.order(), 32u);
  EXPECT_EQ(expr_order(*parse_expr("ES(3,1,+) . Cyc(9)")), 81u);
  EXPECT_THROW(build(*parse_expr("ES(2,2,+) x ES(2,2,+)")), SizeExceeded);
}

TEST(Report, Examples) {
  const auto q8 = cmd_report("Q8");
  EXPECT_EQ(q8["schema"], "pgcl/1");
  EXPECT_EQ(q8["capability"]["capable"], false);
  EXPECT_EQ(q8["capability"]["epicenter_order"], 2);
  EXPECT_EQ(q8["multiplier"]["order"], 1);
  const auto d8 = cmd_report("D8");
  EXPECT_EQ(d8["capability"]["capable"], true);
  EXPECT_EQ(d8["multiplier"]["order"], 2);
  const auto one = cmd_report("Cyc(1)");
  EXPECT_EQ(one["order"], 1);
  EXPECT_EQ(one["multiplier"]["order"], 1);
  EXPECT_EQ(one["capability"]["capable"], true);
  EXPECT_EQ(one["in_class"], false);
  EXPECT_TRUE(one["classification"].is_null());
}

TEST(Report, Deterministic) {
  const MultiplierOracle shared;
  for (const char* e : {"D8 x Cyc(2)", "ES(3,1,-)", "Cyc(12)"}) {
    const std::string a = cmd_report(e).dump(), b = cmd_report(e, {}, &shared).dump();
    EXPECT_EQ(a, b) << e;
    EXPECT_EQ(a, cmd_report(e).dump()) << e;
  }
}

TEST(Report, SkipsHomologyAboveBound) {
  ReportOptions o;
  o.homology_bound = 16;
  const auto j = cmd_report("ES(2,2,+)", o);
  EXPECT_TRUE(j["multiplier"].contains("skipped"));
  EXPECT_EQ(j["in_class"], true);
}

TEST(ErrorJson, Shape) {
  try {
    cmd_report("Cyc(");
    FAIL();
  } catch (const std::exception& e) {
    const auto j = error_json(e);
    EXPECT_EQ(j["kind"], "error");
    EXPECT_EQ(j["error"], "ParseError");
    EXPECT_EQ(j["position"], 4);
  }
}

TEST(Sweep, EnumerationIsPureFunctionOfManifest) {
  SweepManifest m;
  m.primes = {2};
  m.max_order = 32;
  std::vector<std::string> names;
  for (const auto& e : enumerate_sweep(m)) names.push_back(to_string(*e));
  for (const char* want : {"D8", "Q8", "ES(2,2,+)", "ES(2,2,-)", "D8 x Cyc(2)", "Q8 x Cyc(2)", "D8 . Cyc(4)",
                           "D8 . Cyc(4) x Cyc(2)"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  m.workers = 4;
  std::vector<std::string> again;
  for (const auto& e : enumerate_sweep(m)) again.push_back(to_string(*e));
  EXPECT_EQ(names, again);
  for (const auto& e : enumerate_sweep(m)) EXPECT_LE(expr_order(*e), 32u);
}

TEST(Sweep, OddPrimeCorpus) {
  SweepManifest m;
  m.primes = {3};
  m.max_order = 81;
  std::vector<std::string> names;
  for (const auto& e : enumerate_sweep(m)) names.push_back(to_string(*e));
  for (const char* want : {"ES(3,1,+)", "ES(3,1,-)", "ES(3,1,+) x Cyc(3)", "ES(3,1,-) x Cyc(3)", "ES(3,1,+) . Cyc(9)"})
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
}

TEST(Sweep, EmptyConstructorSet) {
  SweepManifest m;
  m.constructors.clear();
  const SweepResult r = run_sweep(m);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_EQ(sweep_csv(r), std::string(kSweepCsvHeader) + "\n");
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Sweep, ManifestValidation) {
  SweepManifest m;
  m.primes = {4};
  EXPECT_THROW(m.validate(), InvalidArgument);
  m.primes = {2};
  m.constructors = {"Bogus"};
  EXPECT_THROW(m.validate(), InvalidArgument);
  m.constructors = kAllConstructors;
  m.workers = 0;
  EXPECT_THROW(m.validate(), InvalidArgument);
}

TEST(Sweep, SmallRunAgreesAcrossWorkers) {
  SweepManifest a;
  a.max_order = 16;
  SweepManifest b = a;
  b.workers = 3;
  const SweepResult ra = run_sweep(a), rb = run_sweep(b);
  EXPECT_EQ(ra.exit_code(), 0);
  EXPECT_EQ(sweep_csv(ra), sweep_csv(rb));
  EXPECT_EQ(sweep_json(a, ra).dump(), sweep_json(b, rb).dump());
  EXPECT_EQ(ra.rows.size(), enumerate_sweep(a).size());
}

TEST(Golden, MatchesCheckedInReports) {
  const auto golden = load(PGCL_GOLDEN_FILE);
  EXPECT_NO_THROW(check_golden(golden, {}));
  for (const char* e : {"Q8", "D8", "Cyc(1)", "D8 . Cyc(4)", "ES(3,1,-)"})
    EXPECT_TRUE(golden["reports"].contains(e)) << e;
}

TEST(Golden, CorruptionIsDetected) {
  auto golden = load(PGCL_GOLDEN_FILE);
  golden["reports"]["D8"]["multiplier"]["order"] = 4;
  EXPECT_THROW(check_golden(golden, {}), GoldenMismatch);
  auto no_schema = load(PGCL_GOLDEN_FILE);
  no_schema.erase("schema");
  EXPECT_THROW(check_golden(no_schema, {}), Error);
}

TEST(Acceptance, SizeGatedChecksAreSkipped) {
  AcceptanceOptions o;
  o.homology_bound = 16;
  const CriterionResult r = run_criterion(1, o);
  std::size_t skipped = 0;
  for (const auto& c : r.checks) skipped += c.status == Status::Skipped;
  EXPECT_EQ(skipped, 6u);
  const CriterionResult three = run_criterion(3, o);
  for (const auto& c : three.checks)
    if (c.status == Status::Fail) ADD_FAILURE() << c.name;
  EXPECT_EQ(three.status(), Status::Pass);
}

TEST(Acceptance, LinearAlgebraCriterion) {
  const CriterionResult r = run_criterion(8, {});
  EXPECT_EQ(r.status(), Status::Pass) << r.summary();
  EXPECT_THROW(run_criterion(10, {}), InvalidArgument);
}
