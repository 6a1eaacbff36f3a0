#pragma once

#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "spitzer/contour.hpp"
#include "spitzer/oracle.hpp"

namespace spitzer::cli {

// Entrywise comparison of one method's table against the dp table.
struct PairComparison {
  Method method;
  Method reference = Method::dp;
  double max_deviation = 0.0;
  int arg_n = 0;
  int arg_m = 0;
  long cells = 0;
  double tolerance = 0.0;
  bool pass = true;
};

// One structural or pointwise check, aggregated over its instances.
struct CheckResult {
  Check check;
  double residual = 0.0;
  // Parameters of the worst instance, e.g. "u=0.5 z=0.25".
  std::string worst;
  int instances = 0;
  double tolerance = 0.0;
  bool pass = true;
};

struct InversionEcho {
  Method method;
  int u_nodes = 0;
  int z_nodes = 0;
  double u_radius = 0.0;
  double u_last_change = 0.0;
};

struct Environment {
  int n_max = 0;
  int m_max = 0;
  int series_order = 0;
  int series_degree = 0;
  std::optional<RadiusCertificate> certificate;
  QuadratureRule quadrature;
  int log_residue_nodes = 0;
  std::vector<InversionEcho> inversions;
};

struct AgreementReport {
  std::vector<PairComparison> comparisons;
  std::vector<CheckResult> checks;
  Environment environment;

  bool all_pass() const;
};

struct RunResult {
  RunConfig config;
  IncrementDistribution dist;
  std::vector<DistributionTable> tables;
  AgreementReport report;
};

// Executes the configured methods and checks. Numerical failures inside a
// method are rethrown as spitzer::Error naming the method.
RunResult run(const RunConfig& config);

}  // namespace spitzer::cli
