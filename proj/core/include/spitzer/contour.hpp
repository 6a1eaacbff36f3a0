#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "spitzer/distribution.hpp"

namespace spitzer {

// Node count and stopping rule for trapezoidal quadrature on a circle.
// The node count doubles until two successive estimates differ by less than
// `tol`, at most `max_doublings` times.
struct QuadratureRule {
  int nodes = 64;
  int max_doublings = 10;
  double tol = 1e-13;

  void validate() const;
};

struct CircleQuadrature {
  double radius = 1.0;
  QuadratureRule rule;
};

struct QuadratureResult {
  complex value;
  int nodes = 0;
  // |difference| between the last two estimates.
  double last_change = 0.0;
};

// Certificate that |u w^{-s} A(w)| <= ratio < 1 on |w| = b for every |u| <= v.
// Since A has nonnegative coefficients, max_{|w|=b} |A(w)| = A(b), so
// ratio = v A(b) / b^s bounds the whole circle.
struct RadiusCertificate {
  double b = 0.0;
  double v = 0.0;
  double ratio = 0.0;

  double safety_margin() const { return 1.0 - ratio; }
};

struct RadiusSearchOptions {
  double b_cap = 4.0;
  int grid_points = 400;
  // Admissible radii need ratio <= 1 - min_safety.
  double min_safety = 1e-3;
};

// Scans b on a geometric grid in (1, min(R, b_cap)); among the admissible radii
// adjacent to the unit circle, returns the grid point nearest the geometric
// mean of 1 and the largest admissible radius. Throws NumericalFailure when no
// grid point is admissible.
RadiusCertificate choose_outer_radius(const IncrementDistribution& dist, double v,
                                      const RadiusSearchOptions& options = {});

// Certificate for a caller-chosen b. Throws when b is outside (1, R) or the
// ratio exceeds 1 - min_safety.
RadiusCertificate certify_radius(const IncrementDistribution& dist, double v, double b,
                                 double min_safety = 1e-3);

// Doubling trapezoid for (1 / 2 pi i) oint f(w) w^{-(n+1)} dw on |w| = radius.
// For a polynomial of degree below the node count the first estimate is exact.
QuadratureResult cauchy_coeff_detailed(const std::function<complex(complex)>& f, int n,
                                       const CircleQuadrature& quad);
complex cauchy_coeff(const std::function<complex(complex)>& f, int n,
                     const CircleQuadrature& quad);

// F(u, z) from the Pollaczek contour integral over |w| = cert.b:
//   F = exp((1/2 pi i) oint (1-z)/((w-1)(w-z)) ln(1 - u w^{-s} A(w)) dw) / (1-u).
// The kernel (1-z)/((w-1)(w-z)) = sum_k (1 - z^k) w^{-k-1} for |w| > max(1,|z|),
// which is what reproduces the exponential series. Returns 1/(1-u) at z = 1
// without quadrature.
complex pollaczek_eval(const IncrementDistribution& dist, complex u, complex z,
                       const RadiusCertificate& cert, const QuadratureRule& rule = {});
QuadratureResult pollaczek_eval_detailed(const IncrementDistribution& dist, complex u, complex z,
                                         const RadiusCertificate& cert,
                                         const QuadratureRule& rule = {});

// The exponent (1/2 pi i) oint (1-z)/((w-1)(w-z)) ln(1 - u w^{-s} A(w)) dw with
// a fixed node count, for convergence studies.
complex pollaczek_exponent(const IncrementDistribution& dist, complex u, complex z, double b,
                           int nodes);

// Pollaczek evaluation for many z at a common u. Caches the contour values
// w^{-s} A(w) per node level and ln(1 - u w^{-s} A(w)) for the current u.
class PollaczekEvaluator {
 public:
  PollaczekEvaluator(const IncrementDistribution& dist, RadiusCertificate cert,
                     QuadratureRule rule = {});

  const RadiusCertificate& certificate() const { return cert_; }

  // Same contract as pollaczek_eval.
  QuadratureResult eval(complex u, complex z);

 private:
  struct Level {
    std::vector<complex> nodes;
    std::vector<complex> ratio;  // w^{-s} A(w)
    std::vector<complex> log_term;  // ln(1 - u w^{-s} A(w)) * w for cached_u_
  };
  const Level& level(int index, complex u);

  const IncrementDistribution* dist_;
  RadiusCertificate cert_;
  QuadratureRule rule_;
  complex cached_u_{std::numeric_limits<double>::quiet_NaN(), 0.0};
  std::vector<Level> levels_;
  std::vector<bool> log_valid_;
};

struct CoefficientIdentity {
  // (1 / 2 pi i) oint_{|w|=b} A(w)^l / w^{k+sl+1} dw
  double integral = 0.0;
  // P(S_l = k) from repeated convolution.
  double pmf = 0.0;
};

CoefficientIdentity verify_coeff_identity(const IncrementDistribution& dist, int l, int k,
                                          const RadiusCertificate& cert,
                                          const QuadratureRule& rule = {});

// Samples F(u_k, z_j) for one u and a batch of z values.
using TransformRowSampler =
    std::function<void(complex u, std::span<const complex> z, std::span<complex> out)>;

struct InversionOptions {
  double u_radius = 0.5;
  double z_radius = 1.0;
  int initial_u_nodes = 32;
  int max_u_doublings = 8;
  // Stop doubling in u once coefficient estimates move by less than
  // u_tol * max|F| between successive grids.
  double u_tol = 1e-14;
  // Number of z nodes; must exceed the degree of every E(z^{M_n}) involved
  // so that the z-inversion is exact. Rounded up to a power of two.
  int z_nodes = 64;
  // F has real Taylor coefficients, so only half of the u circle is sampled
  // and the rest follows by conjugation.
  bool real_coefficients = false;
};

struct InversionResult {
  // probs[n * (m_max + 1) + m] = estimated P(M_n = m).
  std::vector<double> probs;
  int u_nodes = 0;
  int z_nodes = 0;
  double u_last_change = 0.0;
};

// Recovers P(M_n = m), n <= n_max, m <= m_max, from samples of F(u, z) by
// Cauchy extraction in u on |u| = u_radius and then in z on |z| = z_radius.
InversionResult invert_bivariate(const TransformRowSampler& sampler, int n_max, int m_max,
                                 const InversionOptions& options);

}  // namespace spitzer
