#include "spitzer/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "spitzer/error.hpp"

namespace spitzer {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Sum of a nonnegative sequence, smallest terms first.
double stable_sum(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return std::accumulate(sorted.begin(), sorted.end(), 0.0);
}

void check_tail_tolerance(double tol) {
  if (!(tol > 0.0) || tol > kMaxTailTolerance) {
    std::ostringstream msg;
    msg << "tail tolerance " << tol << " outside (0, " << kMaxTailTolerance << "]";
    throw InvalidArgument(msg.str());
  }
}

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << what << ": probability " << p << " outside [0, 1]";
    throw InvalidArgument(msg.str());
  }
}

double poisson_term(double lambda, int j) {
  return std::exp(-lambda + j * std::log(lambda) - std::lgamma(j + 1.0));
}

// P(A > j) for A ~ Poisson(lambda), summed term by term from j + 1 upward.
double poisson_tail(double lambda, int j) {
  double total = 0.0;
  for (int i = j + 1;; ++i) {
    const double term = poisson_term(lambda, i);
    total += term;
    if (i > lambda && term <= 1e-18 * total) break;
    if (term == 0.0 && i > lambda) break;
  }
  return total;
}

IncrementDistribution truncated(std::vector<double> kept, int s, Family family,
                                double defect, double radius, double tol) {
  if (defect > tol) {
    std::ostringstream msg;
    msg << to_string(family) << ": truncation defect " << defect << " exceeds tolerance " << tol;
    throw InvalidArgument(msg.str());
  }
  const double total = stable_sum(kept);
  for (double& p : kept) p /= total;
  return IncrementDistribution(std::move(kept), s, family, defect, radius);
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::deterministic: return "deterministic";
    case Family::bernoulli_scaled: return "bernoulli-scaled";
    case Family::binomial: return "binomial";
    case Family::poisson_truncated: return "poisson-truncated";
    case Family::geometric_truncated: return "geometric-truncated";
    case Family::explicit_pmf: return "explicit";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  if (name == "deterministic") return Family::deterministic;
  if (name == "bernoulli-scaled" || name == "bernoulli") return Family::bernoulli_scaled;
  if (name == "binomial") return Family::binomial;
  if (name == "poisson-truncated" || name == "poisson") return Family::poisson_truncated;
  if (name == "geometric-truncated" || name == "geometric") return Family::geometric_truncated;
  if (name == "explicit") return Family::explicit_pmf;
  throw InvalidArgument("unknown distribution family '" + std::string(name) + "'");
}

IncrementDistribution::IncrementDistribution(std::vector<double> pmf_a, int s, Family family,
                                             double truncation_defect,
                                             double analyticity_radius)
    : pmf_(std::move(pmf_a)),
      s_(s),
      family_(family),
      truncation_defect_(truncation_defect),
      analyticity_radius_(analyticity_radius) {
  if (s_ < 1) throw InvalidArgument("increment distribution: s must be >= 1");
  for (double p : pmf_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw InvalidArgument("increment distribution: probabilities must be finite and >= 0");
    }
  }
  while (!pmf_.empty() && pmf_.back() == 0.0) pmf_.pop_back();
  if (pmf_.empty()) throw InvalidArgument("increment distribution: pmf has no mass");
  if (!(analyticity_radius_ > 1.0)) {
    std::ostringstream msg;
    msg << "increment distribution: analyticity radius " << analyticity_radius_
        << " must exceed 1";
    throw InvalidArgument(msg.str());
  }
  if (!(truncation_defect_ >= 0.0)) {
    throw InvalidArgument("increment distribution: negative truncation defect");
  }

  const double total = stable_sum(pmf_);
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "increment distribution: pmf sums to " << total << ", expected 1";
    throw InvalidArgument(msg.str());
  }
  if (total != 1.0) {
    for (double& p : pmf_) p /= total;
  }

  if (pmf_.front() == 0.0) {
    warnings_.emplace_back(
        "P(X = -s) = 0: the kernel has roots at z = 0, reported as a multiplicity cluster");
  }
}

double IncrementDistribution::prob(int j) const {
  if (j < 0 || j > max_jump()) return 0.0;
  return pmf_[static_cast<std::size_t>(j)];
}

double IncrementDistribution::mean_jump() const {
  double mean = 0.0;
  for (std::size_t j = 0; j < pmf_.size(); ++j) mean += static_cast<double>(j) * pmf_[j];
  return mean;
}

double IncrementDistribution::pgf(double w) const {
  double acc = 0.0;
  for (auto it = pmf_.rbegin(); it != pmf_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

complex IncrementDistribution::pgf(complex w) const {
  complex acc = 0.0;
  for (auto it = pmf_.rbegin(); it != pmf_.rend(); ++it) acc = acc * w + *it;
  return acc;
}

complex IncrementDistribution::pgf_derivative(complex w) const {
  complex acc = 0.0;
  for (int j = max_jump(); j >= 1; --j) acc = acc * w + static_cast<double>(j) * prob(j);
  return acc;
}

IncrementDistribution make_family(const FamilySpec& spec) {
  check_tail_tolerance(spec.tail_tolerance);
  if (spec.s < 1) throw InvalidArgument("s must be a positive integer");

  switch (spec.family) {
    case Family::deterministic: {
      if (spec.value < 0) throw InvalidArgument("deterministic: value must be >= 0");
      std::vector<double> pmf(static_cast<std::size_t>(spec.value) + 1, 0.0);
      pmf.back() = 1.0;
      return IncrementDistribution(std::move(pmf), spec.s, Family::deterministic);
    }
    case Family::bernoulli_scaled: {
      check_probability(spec.p, "bernoulli-scaled");
      if (spec.value < 1) throw InvalidArgument("bernoulli-scaled: jump must be >= 1");
      std::vector<double> pmf(static_cast<std::size_t>(spec.value) + 1, 0.0);
      pmf.front() = 1.0 - spec.p;
      pmf.back() = spec.p;
      return IncrementDistribution(std::move(pmf), spec.s, Family::bernoulli_scaled);
    }
    case Family::binomial: {
      check_probability(spec.p, "binomial");
      if (spec.trials < 0 || spec.trials > 100000) {
        throw InvalidArgument("binomial: trials must be in [0, 100000]");
      }
      const int n = spec.trials;
      std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
      if (spec.p == 0.0) {
        pmf.front() = 1.0;
      } else if (spec.p == 1.0) {
        pmf.back() = 1.0;
      } else {
        const double lp = std::log(spec.p);
        const double lq = std::log1p(-spec.p);
        for (int j = 0; j <= n; ++j) {
          pmf[static_cast<std::size_t>(j)] =
              std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                       j * lp + (n - j) * lq);
        }
        const double total = stable_sum(pmf);
        for (double& p : pmf) p /= total;
      }
      return IncrementDistribution(std::move(pmf), spec.s, Family::binomial);
    }
    case Family::poisson_truncated: {
      if (!(spec.lambda > 0.0) || spec.lambda > 500.0) {
        throw InvalidArgument("poisson: lambda must be in (0, 500]");
      }
      int cut = 0;
      double tail = poisson_tail(spec.lambda, cut);
      while (tail > spec.tail_tolerance) tail = poisson_tail(spec.lambda, ++cut);
      std::vector<double> kept(static_cast<std::size_t>(cut) + 1);
      for (int j = 0; j <= cut; ++j) kept[static_cast<std::size_t>(j)] = poisson_term(spec.lambda, j);
      return truncated(std::move(kept), spec.s, Family::poisson_truncated, tail, kInfinity,
                       spec.tail_tolerance);
    }
    case Family::geometric_truncated: {
      // P(A = j) = p (1 - p)^j, tail P(A > J) = (1 - p)^{J + 1}, radius 1 / (1 - p).
      if (!(spec.p > 0.0 && spec.p <= 1.0)) {
        throw InvalidArgument("geometric: p must be in (0, 1]; p = 0 gives radius 1");
      }
      const double q = 1.0 - spec.p;
      const double radius = q == 0.0 ? kInfinity : 1.0 / q;
      int cut = 0;
      double tail = q;
      while (tail > spec.tail_tolerance) tail = std::pow(q, ++cut + 1);
      std::vector<double> kept(static_cast<std::size_t>(cut) + 1);
      for (int j = 0; j <= cut; ++j) kept[static_cast<std::size_t>(j)] = spec.p * std::pow(q, j);
      return truncated(std::move(kept), spec.s, Family::geometric_truncated, tail, radius,
                       spec.tail_tolerance);
    }
    case Family::explicit_pmf:
      return IncrementDistribution(spec.pmf, spec.s, Family::explicit_pmf);
  }
  throw InvalidArgument("unknown distribution family");
}

IncrementDistribution deterministic(int value, int s) {
  FamilySpec spec;
  spec.family = Family::deterministic;
  spec.value = value;
  spec.s = s;
  return make_family(spec);
}

IncrementDistribution explicit_pmf(std::vector<double> pmf_a, int s) {
  return IncrementDistribution(std::move(pmf_a), s, Family::explicit_pmf);
}

IncrementDistribution bernoulli_scaled(double p, int jump, int s) {
  FamilySpec spec;
  spec.family = Family::bernoulli_scaled;
  spec.p = p;
  spec.value = jump;
  spec.s = s;
  return make_family(spec);
}

IncrementDistribution binomial(int trials, double p, int s) {
  FamilySpec spec;
  spec.family = Family::binomial;
  spec.trials = trials;
  spec.p = p;
  spec.s = s;
  return make_family(spec);
}

IncrementDistribution poisson(double lambda, int s, double tail_tolerance) {
  FamilySpec spec;
  spec.family = Family::poisson_truncated;
  spec.lambda = lambda;
  spec.s = s;
  spec.tail_tolerance = tail_tolerance;
  return make_family(spec);
}

IncrementDistribution geometric(double p, int s, double tail_tolerance) {
  FamilySpec spec;
  spec.family = Family::geometric_truncated;
  spec.p = p;
  spec.s = s;
  spec.tail_tolerance = tail_tolerance;
  return make_family(spec);
}

complex pgf_eval(const IncrementDistribution& dist, complex w) { return dist.pgf(w); }

double WalkPmf::at(long k) const {
  if (k < min_support() || k > max_support()) return 0.0;
  return probs[static_cast<std::size_t>(k - offset)];
}

std::vector<WalkPmf> walk_pmfs(const IncrementDistribution& dist, int l_max,
                               std::size_t support_cap) {
  if (l_max < 1) throw InvalidArgument("walk_pmf: l must be >= 1");
  const std::size_t width = static_cast<std::size_t>(dist.max_jump());
  if (width * static_cast<std::size_t>(l_max) + 1 > support_cap) {
    std::ostringstream msg;
    msg << "walk_pmf: support length " << width * static_cast<std::size_t>(l_max) + 1
        << " exceeds cap " << support_cap << "; reduce l or J";
    throw InvalidArgument(msg.str());
  }
  std::vector<WalkPmf> walks;
  walks.reserve(static_cast<std::size_t>(l_max));
  const std::vector<double> base(dist.pmf().begin(), dist.pmf().end());
  walks.push_back(WalkPmf{1, -static_cast<long>(dist.s()), base});
  for (int l = 2; l <= l_max; ++l) {
    walks.push_back(WalkPmf{l, -static_cast<long>(dist.s()) * l, convolve(walks.back().probs, base)});
  }
  return walks;
}

WalkPmf walk_pmf(const IncrementDistribution& dist, int l, std::size_t support_cap) {
  if (l < 1) throw InvalidArgument("walk_pmf: l must be >= 1");
  auto walks = walk_pmfs(dist, l, support_cap);
  return std::move(walks.back());
}

ZPolynomial positive_part_pgf(const WalkPmf& walk, int m_max) {
  if (m_max < 0) throw InvalidArgument("positive_part_pgf: m_max must be >= 0");
  ZPolynomial out(m_max);
  double at_or_below_zero = 0.0;
  for (long k = walk.min_support(); k <= std::min(0L, walk.max_support()); ++k) {
    at_or_below_zero += walk.at(k);
  }
  out[0] = at_or_below_zero;
  const long top = std::min<long>(m_max, walk.max_support());
  for (long k = 1; k <= top; ++k) out[static_cast<int>(k)] = walk.at(k);
  return out;
}

ZPolynomial positive_part_pgf(const IncrementDistribution& dist, int l, int m_max) {
  return positive_part_pgf(walk_pmf(dist, l), m_max);
}

complex positive_part_pgf_at(const WalkPmf& walk, complex z) {
  complex acc = 0.0;
  for (long k = walk.max_support(); k >= 1; --k) acc = acc * z + walk.at(k);
  acc *= z;
  double at_or_below_zero = 0.0;
  for (long k = walk.min_support(); k <= std::min(0L, walk.max_support()); ++k) {
    at_or_below_zero += walk.at(k);
  }
  return acc + at_or_below_zero;
}

}  // namespace spitzer
