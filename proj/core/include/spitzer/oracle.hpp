#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "spitzer/distribution.hpp"
#include "spitzer/kernel.hpp"
#include "spitzer/series.hpp"

namespace spitzer {

enum class Method { dp, spitzer, product_inversion, pollaczek_inversion };

std::string_view to_string(Method method);
Method method_from_string(std::string_view name);

// P(M_n = m) for n = 0..n_max and m = 0..m_max, tagged with the method that
// produced it. A row is complete when the whole support of M_n fits in
// [0, m_max], i.e. m_max >= n (J - s)^+.
class DistributionTable {
 public:
  DistributionTable(Method method, int n_max, int m_max);

  Method method() const { return method_; }
  int n_max() const { return n_max_; }
  int m_max() const { return m_max_; }

  double at(int n, int m) const { return probs_[index(n, m)]; }
  double& at(int n, int m) { return probs_[index(n, m)]; }
  std::span<const double> row(int n) const;
  double row_sum(int n) const;

  bool complete(int n) const { return complete_[static_cast<std::size_t>(n)] != 0; }
  void set_complete(int n, bool value) { complete_[static_cast<std::size_t>(n)] = value ? 1 : 0; }
  // Mass of M_n above m_max (lindley_dp only; zero for other methods).
  double overflow(int n) const { return overflow_[static_cast<std::size_t>(n)]; }
  void set_overflow(int n, double value) { overflow_[static_cast<std::size_t>(n)] = value; }

 private:
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n) * (static_cast<std::size_t>(m_max_) + 1) +
           static_cast<std::size_t>(m);
  }

  Method method_;
  int n_max_;
  int m_max_;
  std::vector<double> probs_;
  std::vector<char> complete_;
  std::vector<double> overflow_;
};

// Whether the support of M_n fits in [0, m_max].
bool row_is_complete(const IncrementDistribution& dist, int n, int m_max);

// Forward recursion M_{n+1} = (M_n + A_{n+1} - s)^+ from M_0 = 0. Entries with
// m <= m_max are exact: states are tracked up to m_max + s n_max internally,
// since mass above that cannot return below m_max within n_max steps. The
// per-row overflow is the mass above m_max.
DistributionTable lindley_dp(const IncrementDistribution& dist, int n_max, int m_max);

// Table of the coefficients f_n of a truncated Spitzer series.
DistributionTable table_from_series(const IncrementDistribution& dist, const USeries& series,
                                    int n_max, int m_max);

// F_r(u) coefficients: P(M_n + A_{n+1} = r) for n = 0..table.n_max().
struct BoundarySeries {
  int r = 0;
  std::vector<double> coeffs;

  double eval(double u) const;
};

BoundarySeries boundary_series(const IncrementDistribution& dist, const DistributionTable& table,
                               int r);

// |E(z^{M_{n+1}}) - E(z^{M_n}) A(z) z^{-s} - sum_{r<s} P(M_n + A = r)(1 - z^{r-s})|
// with both sides from rows n and n+1 of the table. Throws InvalidArgument
// when either row is incomplete or z = 0.
double functional_equation_check(const IncrementDistribution& dist,
                                 const DistributionTable& table, int n, complex z);

struct NumeratorCheck {
  // max_k |N(u, z_k)|
  double root_residual = 0.0;
  // N(u, 1), which must equal 1.
  double value_at_one = 0.0;
  // max over a z grid of |N(u, z) - prod_k (z - z_k)/(1 - z_k)|.
  double factorization_residual = 0.0;
  int n_max_used = 0;

  double residual() const;
};

// Rows needed so that the truncated F_r(u) tails, bounded by u^{n+1}/(1-u),
// are at most tol / 10.
int numerator_rows_required(double u, double tol);

// Builds N(u, z) = z^s + u sum_{r<s} (z^s - z^r) F_r(u) from truncated
// boundary series and checks that it vanishes at the kernel roots and
// equals 1 at z = 1.
NumeratorCheck numerator_check(const IncrementDistribution& dist, double u, const RootSet& roots,
                               double tol);
// As above with a caller-supplied DP table; throws InvalidArgument when the
// table has fewer rows than numerator_rows_required.
NumeratorCheck numerator_check(const IncrementDistribution& dist, double u, const RootSet& roots,
                               const DistributionTable& table, double tol);

}  // namespace spitzer
