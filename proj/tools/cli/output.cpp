#include "output.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>
#include <string>

namespace spitzer::cli {
namespace {

using Json = nlohmann::ordered_json;

std::string format_g(double value, int digits = 17) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

Json distribution_json(const RunResult& r) {
  const auto& d = r.dist;
  Json j;
  j["family"] = std::string(to_string(d.family()));
  j["s"] = d.s();
  j["max_jump"] = d.max_jump();
  j["pmf"] = std::vector<double>(d.pmf().begin(), d.pmf().end());
  j["truncation_defect"] = d.truncation_defect();
  if (std::isfinite(d.analyticity_radius())) {
    j["analyticity_radius"] = d.analyticity_radius();
  } else {
    j["analyticity_radius"] = "infinite";
  }
  j["warnings"] = d.warnings();
  return j;
}

Json environment_json(const Environment& env) {
  Json j;
  j["n_max"] = env.n_max;
  j["m_max"] = env.m_max;
  if (env.series_order > 0) j["series"] = {{"order_cap", env.series_order}, {"degree_cap", env.series_degree}};
  if (env.certificate) {
    j["radius_certificate"] = {{"b", env.certificate->b},
                               {"v", env.certificate->v},
                               {"ratio", env.certificate->ratio},
                               {"safety_margin", env.certificate->safety_margin()}};
  }
  j["quadrature"] = {{"nodes", env.quadrature.nodes},
                     {"max_doublings", env.quadrature.max_doublings},
                     {"tol", env.quadrature.tol}};
  j["log_residue_nodes"] = env.log_residue_nodes;
  Json inv = Json::array();
  for (const auto& e : env.inversions) {
    inv.push_back({{"method", std::string(to_string(e.method))},
                   {"u_radius", e.u_radius},
                   {"u_nodes", e.u_nodes},
                   {"z_nodes", e.z_nodes},
                   {"u_last_change", e.u_last_change}});
  }
  j["inversions"] = inv;
  return j;
}

Json report_json(const AgreementReport& report) {
  Json comparisons = Json::array();
  for (const auto& c : report.comparisons) {
    comparisons.push_back({{"method", std::string(to_string(c.method))},
                           {"reference", std::string(to_string(c.reference))},
                           {"max_abs_deviation", c.max_deviation},
                           {"arg_max", {{"n", c.arg_n}, {"m", c.arg_m}}},
                           {"cells", c.cells},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"check", std::string(to_string(c.check))},
                      {"residual", c.residual},
                      {"worst", c.worst},
                      {"instances", c.instances},
                      {"tolerance", c.tolerance},
                      {"pass", c.pass}});
  }
  Json j;
  j["comparisons"] = comparisons;
  j["checks"] = checks;
  j["pass"] = report.all_pass();
  return j;
}

}  // namespace

void write_csv(std::ostream& out, const RunResult& result) {
  out << "n,m,method,probability\n";
  for (const auto& table : result.tables) {
    const std::string name(to_string(table.method()));
    for (int n = 0; n <= table.n_max(); ++n) {
      for (int m = 0; m <= table.m_max(); ++m) {
        out << n << ',' << m << ',' << name << ',' << format_g(table.at(n, m)) << '\n';
      }
    }
  }
}

void write_json(std::ostream& out, const RunResult& result) {
  Json doc;
  doc["distribution"] = distribution_json(result);
  Json tables = Json::array();
  for (const auto& table : result.tables) {
    Json t;
    t["method"] = std::string(to_string(table.method()));
    t["n_max"] = table.n_max();
    t["m_max"] = table.m_max();
    Json complete = Json::array();
    Json overflow = Json::array();
    Json probs = Json::array();
    for (int n = 0; n <= table.n_max(); ++n) {
      complete.push_back(table.complete(n));
      overflow.push_back(table.overflow(n));
      const auto row = table.row(n);
      probs.push_back(std::vector<double>(row.begin(), row.end()));
    }
    t["complete_rows"] = complete;
    t["overflow"] = overflow;
    t["probs"] = probs;
    tables.push_back(t);
  }
  doc["tables"] = tables;
  doc["environment"] = environment_json(result.report.environment);
  doc["report"] = report_json(result.report);
  out << doc.dump(2) << '\n';
}

void write_report(std::ostream& out, const RunResult& result, bool verbose) {
  const auto& d = result.dist;
  const auto& report = result.report;
  out << "distribution: " << to_string(d.family()) << ", s = " << d.s() << ", J = " << d.max_jump()
      << ", truncation defect " << format_g(d.truncation_defect(), 3) << '\n';
  for (const auto& w : d.warnings()) out << "warning: " << w << '\n';
  if (verbose) {
    const auto& env = report.environment;
    out << "grid: n_max = " << env.n_max << ", m_max = " << env.m_max << '\n';
    if (env.certificate) {
      out << "radius certificate: b = " << format_g(env.certificate->b, 6) << ", v = "
          << format_g(env.certificate->v, 6) << ", v A(b)/b^s = " << format_g(env.certificate->ratio, 6) << '\n';
    }
    out << "quadrature: " << env.quadrature.nodes << " nodes, " << env.quadrature.max_doublings
        << " doublings, tol " << format_g(env.quadrature.tol, 3) << '\n';
    for (const auto& e : env.inversions) {
      out << "inversion " << to_string(e.method) << ": " << e.u_nodes << " u nodes on |u| = "
          << format_g(e.u_radius, 6) << ", " << e.z_nodes << " z nodes, last u change "
          << format_g(e.u_last_change, 3) << '\n';
    }
  }
  if (report.comparisons.empty()) out << "comparisons: none\n";
  for (const auto& c : report.comparisons) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << to_string(c.method) << " vs " << to_string(c.reference)
        << ": max |diff| " << format_g(c.max_deviation, 3) << " at (n=" << c.arg_n << ", m=" << c.arg_m
        << ") over " << c.cells << " cells, tol " << format_g(c.tolerance, 3) << '\n';
  }
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS" : "FAIL") << "  " << to_string(c.check) << ": residual "
        << format_g(c.residual, 3) << " (worst " << c.worst << ", " << c.instances << " instances), tol "
        << format_g(c.tolerance, 3) << '\n';
  }
  out << (report.all_pass() ? "all checks passed" : "some checks FAILED") << '\n';
}

}  // namespace spitzer::cli
