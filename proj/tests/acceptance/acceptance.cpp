// Acceptance suite: one PASS/FAIL line per criterion. Every tolerance and
// time budget used below is a named constant in this file.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "generators.hpp"
#include "spitzer/spitzer.hpp"

namespace {

using namespace spitzer;

// Criterion 1
constexpr int kSeriesRows = 40;
constexpr double kSeriesTol = 1e-11;
constexpr double kSeriesSeconds = 5.0;
// Criterion 2
constexpr double kV = 0.9;
const std::vector<double> kUGrid{0.1, 0.3, 0.5, 0.7, 0.9 * kV};
const std::vector<double> kZGrid{0.0, 0.25, 0.5, 0.75, 1.0};
constexpr int kPartialSumOrder = 60;
constexpr double kProductSlack = 1e-10;
constexpr double kProductSeconds = 2.0;
// Criterion 3
constexpr double kPollaczekTol = 1e-9;
constexpr double kConvergenceFloor = 1e-11;
// Quadratic convergence: e(2N) <= kSquaringConstant * e(N)^2 for every doubling
// that starts above the floor. The constant absorbs the prefactor C in
// e(N) ~ C rho^N, for which e(2N) = e(N)^2 / C exactly.
constexpr double kSquaringConstant = 100.0;
constexpr int kConvergenceStartNodes = 16;
constexpr int kConvergenceMaxNodes = 1 << 14;
constexpr double kPollaczekSeconds = 5.0;
// Criterion 4
constexpr int kCoeffMax = 20;
constexpr double kCoeffTol = 1e-10;
// Criterion 5
const std::vector<double> kLogResidueU{0.25, 0.5, 0.75};
constexpr int kLogResidueNodes = 1024;
constexpr double kLogResidueTol = 1e-8;
// Criterion 6
constexpr double kFunctionalTol = 1e-11;
const std::vector<double> kFunctionalZ{0.1, 0.25, 0.5, 0.75, 0.9, 1.0};
const std::vector<double> kNumeratorU{0.25, 0.5};
constexpr double kNumeratorTol = 1e-9;
// Criterion 7
constexpr int kRootCases = 200;
constexpr std::uint64_t kRootSeed = 0x5eed2024ULL;
constexpr double kRootUMax = 0.95;
constexpr double kRootResidualTol = 1e-10;
constexpr double kConjugateTol = 1e-10;
// Criterion 8
constexpr double kNormalizationTol = 1e-12;
constexpr double kMonotoneTol = 1e-12;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

int full_width(const IncrementDistribution& d, int rows) { return std::max(5, rows * d.upward_reach()); }

// Tracks a worst-case value together with where it happened.
struct Worst {
  double value = 0.0;
  std::string where;
  void update(double v, const std::string& at) {
    if (!(v <= value)) {
      value = v;
      where = at;
    }
  }
};

Outcome criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Worst worst;
  for (const auto& [name, d] : standard_distributions()) {
    const int m_max = full_width(d, kSeriesRows);
    const auto dp = lindley_dp(d, kSeriesRows, m_max);
    const auto series = spitzer_series(d, kSeriesRows, m_max);
    for (int n = 0; n <= kSeriesRows; ++n) {
      if (!dp.complete(n)) continue;
      for (int m = 0; m <= m_max; ++m) {
        worst.update(std::abs(dp.at(n, m) - series[n][m]), name + " n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
    }
  }
  const double t = seconds_since(start);
  return {worst.value <= kSeriesTol && t <= kSeriesSeconds,
          "max |P_spitzer - P_dp| = " + sci(worst.value) + " (" + worst.where + ", tol " + sci(kSeriesTol) +
              "), " + fixed(t) + " s (limit " + fixed(kSeriesSeconds) + " s)"};
}

Outcome criterion2() {
  const auto start = std::chrono::steady_clock::now();
  bool pass = true;
  Worst error;
  for (const auto& [name, d] : standard_distributions()) {
    for (double z : kZGrid) {
      const auto coeffs = spitzer_coefficients_at(d, kPartialSumOrder, z);
      for (double u : kUGrid) {
        complex partial = 0.0;
        for (int n = kPartialSumOrder; n >= 0; --n) partial = partial * u + coeffs[static_cast<std::size_t>(n)];
        const complex value = product_eval(d, u, z, find_kernel_roots(d, u));
        const double bound = std::pow(u, kPartialSumOrder + 1) / (1.0 - u) + kProductSlack;
        const double err = std::abs(value - partial);
        if (!(err <= bound)) pass = false;
        error.update(err, name + " u=" + fixed(u) + " z=" + fixed(z));
      }
    }
  }
  const double t = seconds_since(start);
  return {pass && t <= kProductSeconds,
          "max |product - partial sum| = " + sci(error.value) + " (" + error.where + ", bound u^" +
              std::to_string(kPartialSumOrder + 1) + "/(1-u) + " + sci(kProductSlack) + " per point), " + fixed(t) +
              " s (limit " + fixed(kProductSeconds) + " s)"};
}

Outcome criterion3() {
  const auto start = std::chrono::steady_clock::now();
  Worst agreement;
  Worst squaring;  // worst e(2N) / e(N)^2 among doublings starting above the floor
  std::string failure;
  for (const auto& [name, d] : standard_distributions()) {
    const auto cert = choose_outer_radius(d, kV);
    for (double u : kUGrid) {
      if (u > cert.v) continue;
      const auto roots = find_kernel_roots(d, u);
      for (double z : kZGrid) {
        const std::string at = name + " u=" + fixed(u) + " z=" + fixed(z);
        const complex reference = product_eval(d, u, z, roots);
        agreement.update(std::abs(pollaczek_eval(d, u, z, cert) - reference), at);
        if (z == 1.0) continue;  // short-circuited, no quadrature
        double previous = std::abs(std::exp(pollaczek_exponent(d, u, z, cert.b, kConvergenceStartNodes)) / (1.0 - u) -
                                   reference);
        for (int nodes = 2 * kConvergenceStartNodes; previous >= kConvergenceFloor; nodes *= 2) {
          if (nodes > kConvergenceMaxNodes) {
            failure = "no convergence below floor by " + std::to_string(kConvergenceMaxNodes) + " nodes at " + at;
            break;
          }
          const double err = std::abs(std::exp(pollaczek_exponent(d, u, z, cert.b, nodes)) / (1.0 - u) - reference);
          if (err >= kConvergenceFloor) {
            squaring.update(err / (previous * previous), at + " N=" + std::to_string(nodes / 2));
          }
          const bool squares = err <= std::max(kSquaringConstant * previous * previous, kConvergenceFloor);
          if (!(err < previous && squares) && failure.empty()) {
            failure = "error " + sci(previous) + " -> " + sci(err) + " at " + at + " N=" + std::to_string(nodes / 2);
          }
          previous = err;
        }
      }
    }
  }
  const double t = seconds_since(start);
  const bool pass = agreement.value <= kPollaczekTol && failure.empty() && t <= kPollaczekSeconds;
  std::string detail = "max |pollaczek - product| = " + sci(agreement.value) + " (tol " + sci(kPollaczekTol) +
                       "); worst e(2N)/e(N)^2 = " + sci(squaring.value) + " (limit " + sci(kSquaringConstant) +
                       " above " + sci(kConvergenceFloor) + "), " + fixed(t) + " s (limit " +
                       fixed(kPollaczekSeconds) + " s)";
  if (!failure.empty()) detail += "; " + failure;
  return {pass, detail};
}

Outcome criterion4() {
  Worst worst;
  for (const auto& [name, d] : standard_distributions()) {
    const auto cert = choose_outer_radius(d, kV);
    for (int l = 1; l <= kCoeffMax; ++l) {
      for (int k = 1; k <= kCoeffMax; ++k) {
        const auto c = verify_coeff_identity(d, l, k, cert);
        worst.update(std::abs(c.integral - c.pmf), name + " l=" + std::to_string(l) + " k=" + std::to_string(k));
      }
    }
  }
  return {worst.value <= kCoeffTol,
          "max |integral - P(S_l = k)| = " + sci(worst.value) + " (" + worst.where + ", tol " + sci(kCoeffTol) + ")"};
}

Outcome criterion5() {
  Worst worst;
  for (const auto& [name, d] : standard_distributions()) {
    for (double u : kLogResidueU) {
      const auto roots = find_kernel_roots(d, u);
      const double z = 0.5 * (roots.max_modulus + 1.0);
      const double a = 0.5 * (roots.max_modulus + z);
      const auto chk = root_logresidue_check(d, u, z, a, kLogResidueNodes);
      worst.update(std::abs(chk.lhs - chk.rhs), name + " u=" + fixed(u));
    }
  }
  return {worst.value <= kLogResidueTol, "max |lhs - rhs| = " + sci(worst.value) + " (" + worst.where + ", " +
                                             std::to_string(kLogResidueNodes) + " nodes, tol " + sci(kLogResidueTol) + ")"};
}

Outcome criterion6() {
  Worst functional;
  Worst numerator;
  for (const auto& [name, d] : standard_distributions()) {
    const auto dp = lindley_dp(d, kSeriesRows + 1, full_width(d, kSeriesRows + 1));
    for (int n = 0; n <= kSeriesRows; ++n) {
      for (double z : kFunctionalZ) {
        functional.update(functional_equation_check(d, dp, n, z), name + " n=" + std::to_string(n));
      }
    }
    for (double u : kNumeratorU) {
      const auto chk = numerator_check(d, u, find_kernel_roots(d, u), kNumeratorTol);
      numerator.update(chk.residual(), name + " u=" + fixed(u));
    }
  }
  return {functional.value <= kFunctionalTol && numerator.value <= kNumeratorTol,
          "functional equation residual " + sci(functional.value) + " (tol " + sci(kFunctionalTol) +
              "); numerator residual " + sci(numerator.value) + " (" + numerator.where + ", tol " +
              sci(kNumeratorTol) + ")"};
}

Outcome criterion7() {
  testing::Rng rng(kRootSeed);
  int count_failures = 0;
  Worst residual;
  Worst asymmetry;
  for (int trial = 0; trial < kRootCases; ++trial) {
    const auto d = testing::random_distribution(rng, 4, 12, true);
    const bool real = trial % 2 == 0;
    const double modulus = testing::uniform(rng, 0.01, kRootUMax);
    const complex u = real ? complex(modulus) : std::polar(modulus, testing::uniform(rng, -M_PI, M_PI));
    const std::string at = "case " + std::to_string(trial);
    RootSet roots;
    try {
      roots = find_kernel_roots(d, u);
    } catch (const NumericalFailure&) {
      ++count_failures;
      continue;
    }
    if (static_cast<int>(roots.roots.size()) != d.s() || !(roots.max_modulus < 1.0)) ++count_failures;
    residual.update(roots.max_residual(), at);
    if (real) asymmetry.update(conjugate_asymmetry(roots), at);
  }
  return {count_failures == 0 && residual.value <= kRootResidualTol && asymmetry.value <= kConjugateTol,
          std::to_string(kRootCases) + " cases (seed " + std::to_string(kRootSeed) + "), Rouche count failures " +
              std::to_string(count_failures) + ", max residual " + sci(residual.value) + " (tol " +
              sci(kRootResidualTol) + "), max conjugate asymmetry " + sci(asymmetry.value) + " (tol " +
              sci(kConjugateTol) + ")"};
}

Outcome criterion8() {
  Worst normalization;
  Worst monotone;
  for (const auto& [name, d] : standard_distributions()) {
    const auto cert = choose_outer_radius(d, kV);
    for (double u : kUGrid) {
      const double exact = 1.0 / (1.0 - u);
      normalization.update(std::abs(spitzer_eval(d, u, 1.0) - exact), name + " spitzer u=" + fixed(u));
      normalization.update(std::abs(product_eval(d, u, 1.0, find_kernel_roots(d, u)) - exact),
                           name + " product u=" + fixed(u));
      if (u <= cert.v) {
        normalization.update(std::abs(pollaczek_eval(d, u, 1.0, cert) - exact), name + " pollaczek u=" + fixed(u));
      }
    }
    const int m_max = full_width(d, kSeriesRows);
    const auto dp = lindley_dp(d, kSeriesRows, m_max);
    for (int n = 0; n < kSeriesRows; ++n) {
      double tail_n = dp.overflow(n);
      double tail_next = dp.overflow(n + 1);
      for (int m = m_max; m >= 1; --m) {
        tail_n += dp.at(n, m);
        tail_next += dp.at(n + 1, m);
        monotone.update(tail_n - tail_next, name + " n=" + std::to_string(n) + " m=" + std::to_string(m));
      }
    }
  }
  return {normalization.value <= kNormalizationTol && monotone.value <= kMonotoneTol,
          "max |F(u,1) - 1/(1-u)| = " + sci(normalization.value) + " (tol " + sci(kNormalizationTol) +
              "); max tail decrease " + sci(monotone.value) + " (tol " + sci(kMonotoneTol) + ")"};
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

Outcome criterion9() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("spitzer-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(SPITZER_CONFIG_DIR)) {
    if (entry.path().extension() == ".conf") configs.push_back(entry.path());
  }
  std::sort(configs.begin(), configs.end());
  bool pass = !configs.empty();
  std::string problems;
  for (const auto& config : configs) {
    for (const char* format : {"csv", "json"}) {
      std::string outputs[2];
      for (int rep = 0; rep < 2; ++rep) {
        const fs::path out = dir / (config.stem().string() + "." + format + "." + std::to_string(rep));
        const std::string cmd = std::string("\"") + SPITZER_CLI_PATH + "\" --config \"" + config.string() +
                                "\" --format " + format + " --output \"" + out.string() + "\" 2>/dev/null";
        const int status = std::system(cmd.c_str());
        if (status != 0) {
          pass = false;
          problems += " " + config.stem().string() + "/" + format + " exit " + std::to_string(status);
        }
        outputs[rep] = slurp(out);
      }
      if (outputs[0] != outputs[1] || outputs[0].empty()) {
        pass = false;
        problems += " " + config.stem().string() + "/" + format + " differs";
      }
    }
  }
  fs::remove_all(dir);
  return {pass, std::to_string(configs.size()) + " configs x {csv, json} run twice" +
                    (problems.empty() ? std::string(", outputs byte-identical, exit 0") : ";" + problems)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 spitzer series equals dp", criterion1},
      {"2 product form vs series partial sums", criterion2},
      {"3 pollaczek integral vs product form", criterion3},
      {"4 coefficient extraction identity", criterion4},
      {"5 logarithmic residue identity", criterion5},
      {"6 functional equation and numerator", criterion6},
      {"7 kernel root quality", criterion7},
      {"8 normalization and tail monotonicity", criterion8},
      {"9 cli determinism and exit status", criterion9},
  };
  int failures = 0;
  for (const auto& [name, body] : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      outcome = body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s  criterion %s: %s [%.2f s]\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str(),
                seconds_since(start));
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
