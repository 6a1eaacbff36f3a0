#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spitzer/polynomial.hpp"

namespace spitzer {

// Largest tail mass a family construction may drop before renormalizing.
inline constexpr double kMaxTailTolerance = 1e-14;

// Default cap on the support length of an l-fold convolution.
inline constexpr std::size_t kDefaultSupportCap = std::size_t{1} << 24;

enum class Family {
  deterministic,
  bernoulli_scaled,
  binomial,
  poisson_truncated,
  geometric_truncated,
  explicit_pmf,
};

std::string_view to_string(Family family);
// Accepts the names printed by to_string plus the short forms
// "bernoulli", "poisson", "geometric" and "explicit".
Family family_from_string(std::string_view name);

// Parameters of a named family. Only the fields relevant to `family` are read.
struct FamilySpec {
  Family family = Family::explicit_pmf;
  int s = 1;
  int value = 0;          // deterministic: A == value; bernoulli_scaled: jump size
  double p = 0.0;         // bernoulli_scaled, binomial, geometric
  int trials = 0;         // binomial
  double lambda = 0.0;    // poisson
  std::vector<double> pmf;  // explicit_pmf
  double tail_tolerance = kMaxTailTolerance;
};

// Law of the nonnegative jump A together with the downward bound s; the walk
// increment is X = A - s. Immutable after construction.
class IncrementDistribution {
 public:
  // Validates, strips trailing zeros and renormalizes. The input must sum to 1
  // within 1e-12.
  IncrementDistribution(std::vector<double> pmf_a, int s,
                        Family family = Family::explicit_pmf,
                        double truncation_defect = 0.0,
                        double analyticity_radius = std::numeric_limits<double>::infinity());

  int s() const { return s_; }
  // J, the largest index with p_J > 0.
  int max_jump() const { return static_cast<int>(pmf_.size()) - 1; }
  // (J - s)^+, the most the walk can climb in one step.
  int upward_reach() const { return max_jump() > s_ ? max_jump() - s_ : 0; }
  std::span<const double> pmf() const { return pmf_; }
  double prob(int j) const;
  Family family() const { return family_; }
  double truncation_defect() const { return truncation_defect_; }
  // Radius R of A(z); +inf for entire pgfs.
  double analyticity_radius() const { return analyticity_radius_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  double mean_jump() const;

  double pgf(double w) const;
  complex pgf(complex w) const;
  complex pgf_derivative(complex w) const;

 private:
  std::vector<double> pmf_;
  int s_;
  Family family_;
  double truncation_defect_;
  double analyticity_radius_;
  std::vector<std::string> warnings_;
};

IncrementDistribution make_family(const FamilySpec& spec);

// Shorthands for the common constructions.
IncrementDistribution deterministic(int value, int s);
IncrementDistribution explicit_pmf(std::vector<double> pmf_a, int s);
IncrementDistribution bernoulli_scaled(double p, int jump, int s);
IncrementDistribution binomial(int trials, double p, int s);
IncrementDistribution poisson(double lambda, int s, double tail_tolerance = kMaxTailTolerance);
IncrementDistribution geometric(double p, int s, double tail_tolerance = kMaxTailTolerance);

// A(w) by Horner evaluation.
complex pgf_eval(const IncrementDistribution& dist, complex w);

// Law of S_l = X_1 + ... + X_l: probs[k] = P(S_l = offset + k), offset = -s*l.
struct WalkPmf {
  int l = 0;
  long offset = 0;
  std::vector<double> probs;

  long min_support() const { return offset; }
  long max_support() const { return offset + static_cast<long>(probs.size()) - 1; }
  // P(S_l = k); zero outside the support.
  double at(long k) const;
};

WalkPmf walk_pmf(const IncrementDistribution& dist, int l,
                 std::size_t support_cap = kDefaultSupportCap);

// walk_pmf for l = 1..l_max by repeated convolution; element i holds l = i + 1.
std::vector<WalkPmf> walk_pmfs(const IncrementDistribution& dist, int l_max,
                               std::size_t support_cap = kDefaultSupportCap);

// E(z^{S_l^+}) truncated to degree m_max: coefficient 0 is P(S_l <= 0) and
// coefficient k is P(S_l = k).
ZPolynomial positive_part_pgf(const IncrementDistribution& dist, int l, int m_max);
ZPolynomial positive_part_pgf(const WalkPmf& walk, int m_max);

// E(z^{S_l^+}) evaluated at a point, using the whole support.
complex positive_part_pgf_at(const WalkPmf& walk, complex z);

}  // namespace spitzer
