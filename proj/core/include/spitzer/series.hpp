#pragma once

#include <complex>
#include <span>
#include <vector>

#include "spitzer/distribution.hpp"
#include "spitzer/polynomial.hpp"

namespace spitzer {

// Truncated power series in u whose coefficients f_0..f_N are ZPolynomials
// sharing one z-truncation degree.
class USeries {
 public:
  // The zero series.
  USeries(int order_cap, int degree_cap);
  // Throws InvalidArgument if the coefficients disagree on degree_cap.
  explicit USeries(std::vector<ZPolynomial> coeffs);

  int order_cap() const { return static_cast<int>(coeffs_.size()) - 1; }
  int degree_cap() const { return coeffs_.front().degree_cap(); }

  const ZPolynomial& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  ZPolynomial& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }

  // Partial sum sum_{n <= order_cap} u^n f_n(z).
  complex eval(complex u, complex z) const;

 private:
  std::vector<ZPolynomial> coeffs_;
};

// exp(g) for g with zero constant term, via n f_n = sum_{l=1}^{n} l g_l * f_{n-l}.
USeries series_exp(const USeries& g);

// log(f) for f with unit constant term; inverse of series_exp.
USeries series_log(const USeries& f);

// F(u, z) = exp(sum_l (u^l / l) E(z^{S_l^+})) truncated at order N in u and
// degree M in z. Coefficient f_n is the pgf of M_n truncated to degree M;
// entries are exact (up to roundoff) for every n <= N and m <= M.
USeries spitzer_series(const IncrementDistribution& dist, int order_cap, int degree_cap);

// Scalar version of series_exp for coefficient sequences in u.
std::vector<complex> scalar_series_exp(std::span<const complex> g);

// f_n(z) = E(z^{M_n}) for n = 0..order_cap at a single point z, built from the
// full support of every S_l (no truncation in z).
std::vector<complex> spitzer_coefficients_at(const IncrementDistribution& dist, int order_cap,
                                             complex z);

// F(u, z) from the exponential form, with the l-sum carried until its tail
// bound |u|^{L+1} / ((L+1)(1-|u|)) drops below 1e-17. Requires |u| < 1 and
// |z| <= 1.
complex spitzer_eval(const IncrementDistribution& dist, complex u, complex z);

}  // namespace spitzer
