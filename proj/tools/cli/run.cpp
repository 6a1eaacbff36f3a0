#include "run.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

#include "spitzer/kernel.hpp"
#include "spitzer/series.hpp"

namespace spitzer::cli {
namespace {

constexpr int kMaxZNodes = 1 << 16;

std::string label(const char* name, double value) {
  std::ostringstream out;
  out.precision(6);
  out << name << "=" << value;
  return out.str();
}

std::string point(double u, double z) { return label("u", u) + " " + label("z", z); }

// Folds instance residuals into one CheckResult.
class CheckAccumulator {
 public:
  CheckAccumulator(Check check, double tolerance) {
    result_.check = check;
    result_.tolerance = tolerance;
  }
  void add(double residual, const std::string& where) {
    ++result_.instances;
    // A NaN residual is the worst possible and is never displaced.
    if (result_.instances == 1 || (!std::isnan(result_.residual) && !(residual <= result_.residual))) {
      result_.residual = residual;
      result_.worst = where;
    }
  }
  CheckResult finish() {
    result_.pass = result_.residual <= result_.tolerance;
    return result_;
  }

 private:
  CheckResult result_;
};

// Rethrows failures from inside a method with its name attached.
template <class F>
auto guarded(std::string_view what, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(std::string(what) + ": " + e.what());
  }
}

bool selected(const std::vector<Method>& methods, Method m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

DistributionTable table_from_inversion(Method method, const IncrementDistribution& dist,
                                       const InversionResult& inv, int n_max, int m_max) {
  DistributionTable table(method, n_max, m_max);
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= m_max; ++m) {
      table.at(n, m) = inv.probs[static_cast<std::size_t>(n) * (static_cast<std::size_t>(m_max) + 1) +
                                 static_cast<std::size_t>(m)];
    }
    table.set_complete(n, row_is_complete(dist, n, m_max));
  }
  return table;
}

PairComparison compare(const DistributionTable& table, const DistributionTable& dp, double tol) {
  PairComparison out;
  out.method = table.method();
  out.tolerance = tol;
  out.max_deviation = -1.0;
  for (int n = 0; n <= dp.n_max(); ++n) {
    for (int m = 0; m <= dp.m_max(); ++m) {
      const double dev = std::abs(table.at(n, m) - dp.at(n, m));
      ++out.cells;
      if (!(dev <= out.max_deviation)) {
        out.max_deviation = dev;
        out.arg_n = n;
        out.arg_m = m;
      }
    }
  }
  out.pass = out.max_deviation <= tol;
  return out;
}

}  // namespace

bool AgreementReport::all_pass() const {
  return std::all_of(comparisons.begin(), comparisons.end(), [](const auto& c) { return c.pass; }) &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

RunResult run(const RunConfig& config) {
  config.validate();
  RunResult result{config, make_family(config.distribution), {}, {}};
  const IncrementDistribution& dist = result.dist;
  const auto methods = config.effective_methods();
  const auto checks = config.effective_checks();
  const int n_max = config.n_max;
  const int m_max = config.effective_m_max(dist);
  const QuadratureRule rule{config.quadrature_nodes, config.max_doublings, config.quadrature_tol};

  Environment& env = result.report.environment;
  env.n_max = n_max;
  env.m_max = m_max;
  env.quadrature = rule;
  env.log_residue_nodes = config.log_residue_nodes;

  const bool needs_certificate = selected(methods, Method::pollaczek_inversion) ||
                                 std::find(checks.begin(), checks.end(), Check::coefficient_identity) !=
                                     checks.end();
  if (needs_certificate) {
    env.certificate = guarded("radius certificate", [&] { return choose_outer_radius(dist, config.v); });
  }

  // Tables.
  for (Method method : methods) {
    switch (method) {
      case Method::dp:
        result.tables.push_back(lindley_dp(dist, n_max, m_max));
        break;
      case Method::spitzer: {
        env.series_order = std::max(1, n_max);
        env.series_degree = m_max;
        const auto series = guarded("spitzer", [&] { return spitzer_series(dist, env.series_order, m_max); });
        result.tables.push_back(table_from_series(dist, series, n_max, m_max));
        break;
      }
      case Method::product_inversion:
      case Method::pollaczek_inversion: {
        // More z nodes than the largest degree of any E(z^{M_n}), n <= n_max,
        // so the z-inversion is exact.
        const long degree = std::max<long>(m_max, static_cast<long>(n_max) * dist.upward_reach());
        if (degree + 1 > kMaxZNodes) {
          throw Error(std::string(to_string(method)) + ": n_max (J - s)^+ = " + std::to_string(degree) +
                      " needs more than " + std::to_string(kMaxZNodes) + " z nodes");
        }
        InversionOptions opts;
        opts.u_radius = config.u_radius;
        opts.real_coefficients = true;
        opts.z_nodes = std::max(16, static_cast<int>(std::bit_ceil(static_cast<unsigned long>(degree + 1))));
        TransformRowSampler sampler;
        std::optional<PollaczekEvaluator> evaluator;
        if (method == Method::product_inversion) {
          sampler = [&](complex u, std::span<const complex> z, std::span<complex> out) {
            const RootSet roots = find_kernel_roots(dist, u);
            for (std::size_t j = 0; j < z.size(); ++j) out[j] = product_eval(dist, u, z[j], roots);
          };
        } else {
          evaluator.emplace(dist, *env.certificate, rule);
          sampler = [&](complex u, std::span<const complex> z, std::span<complex> out) {
            for (std::size_t j = 0; j < z.size(); ++j) out[j] = evaluator->eval(u, z[j]).value;
          };
        }
        const auto inv = guarded(to_string(method), [&] { return invert_bivariate(sampler, n_max, m_max, opts); });
        env.inversions.push_back({method, inv.u_nodes, inv.z_nodes, opts.u_radius, inv.u_last_change});
        result.tables.push_back(table_from_inversion(method, dist, inv, n_max, m_max));
        break;
      }
    }
  }

  const DistributionTable& dp = result.tables.front();
  for (std::size_t i = 1; i < result.tables.size(); ++i) {
    const auto& table = result.tables[i];
    const double tol = table.method() == Method::spitzer ? config.tol.spitzer : config.tol.inversion;
    result.report.comparisons.push_back(compare(table, dp, tol));
  }

  // Checks.
  std::vector<double> interior_u;
  for (double u : config.u_grid) {
    if (u > 0.0 && u < 1.0) interior_u.push_back(u);
  }
  const bool want_product = selected(methods, Method::product_inversion);
  const bool want_pollaczek = selected(methods, Method::pollaczek_inversion);
  const bool want_spitzer = selected(methods, Method::spitzer);

  for (Check check : checks) {
    switch (check) {
      case Check::functional_equation: {
        CheckAccumulator acc(check, config.tol.functional_equation);
        const int rows = n_max + 1;
        const auto full = lindley_dp(dist, rows, std::max(0, rows * dist.upward_reach()));
        std::vector<double> zs;
        for (double z : config.z_grid) {
          if (z != 0.0) zs.push_back(z);
        }
        if (zs.empty()) zs.push_back(0.5);
        for (int n = 0; n < rows; ++n) {
          for (double z : zs) {
            acc.add(functional_equation_check(dist, full, n, z), "n=" + std::to_string(n) + " " + label("z", z));
          }
        }
        result.report.checks.push_back(acc.finish());
        break;
      }
      case Check::numerator: {
        CheckAccumulator acc(check, config.tol.numerator);
        for (double u : interior_u) {
          const auto roots = guarded("numerator check", [&] { return find_kernel_roots(dist, u); });
          acc.add(numerator_check(dist, u, roots, config.tol.numerator).residual(), label("u", u));
        }
        if (auto done = acc.finish(); done.instances > 0) result.report.checks.push_back(done);
        break;
      }
      case Check::coefficient_identity: {
        CheckAccumulator acc(check, config.tol.coefficient_identity);
        for (int l = 1; l <= config.coefficient_l_max; ++l) {
          const WalkPmf walk = walk_pmf(dist, l);
          for (int k = 1; k <= config.coefficient_k_max; ++k) {
            const auto c = guarded("coefficient identity",
                                   [&] { return verify_coeff_identity(dist, l, k, *env.certificate, rule); });
            acc.add(std::abs(c.integral - walk.at(k)), "l=" + std::to_string(l) + " k=" + std::to_string(k));
          }
        }
        result.report.checks.push_back(acc.finish());
        break;
      }
      case Check::log_residue: {
        CheckAccumulator acc(check, config.tol.log_residue);
        for (double u : interior_u) {
          const auto roots = guarded("log-residue check", [&] { return find_kernel_roots(dist, u); });
          const double z = 0.5 * (roots.max_modulus + 1.0);
          const double a = 0.5 * (roots.max_modulus + z);
          const auto lr = guarded("log-residue check",
                                  [&] { return root_logresidue_check(dist, u, z, a, config.log_residue_nodes); });
          acc.add(std::abs(lr.lhs - lr.rhs), point(u, z));
        }
        if (auto done = acc.finish(); done.instances > 0) result.report.checks.push_back(done);
        break;
      }
      case Check::transform_grid: {
        if (!want_product && !want_pollaczek) break;
        CheckAccumulator acc(check, config.tol.transform);
        std::optional<PollaczekEvaluator> evaluator;
        if (want_pollaczek) evaluator.emplace(dist, *env.certificate, rule);
        for (double u : config.u_grid) {
          const auto roots = guarded("transform grid", [&] { return find_kernel_roots(dist, u); });
          for (double z : config.z_grid) {
            const complex reference = spitzer_eval(dist, u, z);
            if (want_product) {
              acc.add(std::abs(product_eval(dist, u, z, roots) - reference), "product " + point(u, z));
            }
            if (want_pollaczek && u <= config.v) {
              const complex value = guarded("transform grid", [&] { return evaluator->eval(u, z).value; });
              acc.add(std::abs(value - reference), "pollaczek " + point(u, z));
            }
          }
        }
        result.report.checks.push_back(acc.finish());
        break;
      }
      case Check::normalization: {
        if (!want_spitzer && !want_product && !want_pollaczek) break;
        CheckAccumulator acc(check, config.tol.normalization);
        for (double u : config.u_grid) {
          const double exact = 1.0 / (1.0 - u);
          auto add = [&](const char* name, complex value) {
            acc.add(std::abs(value - exact) / exact, std::string(name) + " " + point(u, 1.0));
          };
          if (want_spitzer) add("spitzer", spitzer_eval(dist, u, 1.0));
          if (want_product) add("product", product_eval(dist, u, 1.0, find_kernel_roots(dist, u)));
          if (want_pollaczek && u <= config.v) add("pollaczek", pollaczek_eval(dist, u, 1.0, *env.certificate, rule));
        }
        result.report.checks.push_back(acc.finish());
        break;
      }
    }
  }
  return result;
}

}  // namespace spitzer::cli
