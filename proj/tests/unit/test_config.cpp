#include <gtest/gtest.h>

#include <sstream>

#include "config.hpp"
#include "output.hpp"
#include "run.hpp"

namespace spitzer::cli {
namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.conf");
}

std::string error_of(const std::string& text) {
  try {
    parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ParseConfig, MinimalDefaults) {
  const auto c = parse("family = explicit\npmf = 0.5, 0, 0.5\ns = 1\n");
  EXPECT_EQ(c.distribution.family, Family::explicit_pmf);
  EXPECT_EQ(c.distribution.pmf, (std::vector<double>{0.5, 0.0, 0.5}));
  EXPECT_EQ(c.methods, std::vector<Method>{Method::dp});
  EXPECT_EQ(c.n_max, 20);
  EXPECT_FALSE(c.m_max.has_value());
  EXPECT_EQ(c.format, OutputFormat::csv);
  EXPECT_TRUE(c.effective_checks().empty());
}

TEST(ParseConfig, CommentsWhitespaceAndLists) {
  const auto c = parse(
      "# full-line comment\n"
      "  family=geometric   # trailing comment\n"
      "p = 0.5\n"
      "\n"
      "s = 1\n"
      "methods = spitzer , pollaczek\n"
      "u_grid = 0.2,0.4\n"
      "checks = numerator, log_residue\n"
      "tol.numerator = 1e-8\n"
      "format = json\n"
      "verbose = true\n");
  EXPECT_EQ(c.distribution.family, Family::geometric_truncated);
  EXPECT_EQ(c.effective_methods(),
            (std::vector<Method>{Method::dp, Method::spitzer, Method::pollaczek_inversion}));
  EXPECT_EQ(c.u_grid, (std::vector<double>{0.2, 0.4}));
  EXPECT_EQ(c.effective_checks(), (std::vector<Check>{Check::numerator, Check::log_residue}));
  EXPECT_EQ(c.tol.numerator, 1e-8);
  EXPECT_EQ(c.format, OutputFormat::json);
  EXPECT_TRUE(c.verbose);
}

TEST(ParseConfig, DiagnosticsCarryLineAndKey) {
  EXPECT_NE(error_of("family = explicit\ns 1\n").find("test.conf:2:"), std::string::npos);
  EXPECT_NE(error_of("family = explicit\nsize = 3\n").find("test.conf:2: key 'size': unknown key"),
            std::string::npos);
  EXPECT_NE(error_of("family = poisson\nlambda = abc\ns = 1\n").find("test.conf:2: key 'lambda'"),
            std::string::npos);
  EXPECT_NE(error_of("family = poisson\nlambda = 1\nlambda = 2\ns = 1\n").find("duplicate key (first set on line 2)"),
            std::string::npos);
  EXPECT_NE(error_of("family = poisson\nlambda =\ns = 1\n").find("missing value"), std::string::npos);
  EXPECT_NE(error_of("lambda = 1\ns = 1\n").find("'family' is required"), std::string::npos);
  EXPECT_NE(error_of("family = binomial\ntrials = 3\np = 0.4\ns = 1\nmethods = dp, mc\n").find("test.conf:5: key 'methods'"),
            std::string::npos);
  EXPECT_NE(error_of("family = explicit\npmf = 1\ns = 1\nu_grid = 0.5, 0.99\n").find("test.conf:4: key 'u_grid'"),
            std::string::npos);
}

TEST(ParseConfig, RejectsLooseTailTolerance) {
  const std::string msg = error_of("family = geometric\np = 0.5\ns = 1\ntail_tolerance = 1e-2\n");
  EXPECT_NE(msg.find("test.conf:4: key 'tail_tolerance'"), std::string::npos) << msg;
}

TEST(ParseConfig, RejectsUnitRadius) {
  EXPECT_NE(error_of("family = geometric\np = 0\ns = 1\n").find("key 'p'"), std::string::npos);
}

TEST(ParseConfig, PollaczekNeedsURadiusWithinV) {
  EXPECT_NE(error_of("family = explicit\npmf = 1\ns = 1\nmethods = pollaczek\nv = 0.4\n").find("u_radius"),
            std::string::npos);
}

TEST(Run, DpOnlyHasNoComparisons) {
  auto c = parse("family = binomial\ntrials = 3\np = 0.4\ns = 2\nn_max = 5\n");
  const auto r = run(c);
  ASSERT_EQ(r.tables.size(), 1u);
  EXPECT_TRUE(r.report.comparisons.empty());
  EXPECT_TRUE(r.report.checks.empty());
  EXPECT_TRUE(r.report.all_pass());
}

TEST(Run, SimpleWalkAllMethodsPass) {
  auto c = parse("family = explicit\npmf = 0.5, 0, 0.5\ns = 1\nmethods = all\nn_max = 20\n");
  const auto r = run(c);
  ASSERT_EQ(r.tables.size(), 4u);
  ASSERT_EQ(r.report.comparisons.size(), 3u);
  for (const auto& cmp : r.report.comparisons) {
    EXPECT_TRUE(cmp.pass) << to_string(cmp.method) << " " << cmp.max_deviation;
    EXPECT_LE(cmp.max_deviation, 1e-9);
  }
  EXPECT_EQ(r.report.checks.size(), all_checks().size());
  for (const auto& chk : r.report.checks) EXPECT_TRUE(chk.pass) << to_string(chk.check) << " " << chk.residual;
}

TEST(Run, FailingToleranceFlipsPassFlag) {
  auto c = parse("family = explicit\npmf = 0.5, 0, 0.5\ns = 1\nmethods = product\nn_max = 10\n"
                 "checks = none\ntol.inversion = 1e-30\n");
  const auto r = run(c);
  ASSERT_EQ(r.report.comparisons.size(), 1u);
  EXPECT_FALSE(r.report.comparisons[0].pass);
  EXPECT_FALSE(r.report.all_pass());
}

TEST(Output, CsvHeaderAndFormat) {
  auto c = parse("family = explicit\npmf = 0.5, 0, 0.5\ns = 1\nn_max = 2\nm_max = 2\n");
  std::ostringstream out;
  write_csv(out, run(c));
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("n,m,method,probability\n0,0,dp,1\n", 0), 0u);
  EXPECT_NE(text.find("2,1,dp,0.25\n"), std::string::npos);
}

TEST(Output, JsonIsDeterministic) {
  auto c = parse("family = binomial\ntrials = 3\np = 0.4\ns = 2\nmethods = spitzer, product\nn_max = 6\n");
  std::ostringstream a, b;
  write_json(a, run(c));
  write_json(b, run(c));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("\"comparisons\""), std::string::npos);
}

}  // namespace
}  // namespace spitzer::cli
