#pragma once

#include <complex>
#include <span>
#include <vector>

namespace spitzer {

using complex = std::complex<double>;

// w^k by repeated squaring; negative k inverts. ipow(0, 0) is 1.
complex ipow(complex w, int k);
double ipow(double w, int k);

// Polynomial in z with real coefficients c_0..c_M, truncated at degree M.
// Coefficients are stored densely, explicit zeros included.
class ZPolynomial {
 public:
  // The zero polynomial with the given truncation degree.
  explicit ZPolynomial(int degree_cap);
  // degree_cap is coeffs.size() - 1; coeffs must be non-empty.
  explicit ZPolynomial(std::vector<double> coeffs);

  static ZPolynomial constant(double c, int degree_cap);
  static ZPolynomial monomial(int k, double c, int degree_cap);

  int degree_cap() const { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const double> coeffs() const { return coeffs_; }
  double operator[](int m) const { return coeffs_[static_cast<std::size_t>(m)]; }
  double& operator[](int m) { return coeffs_[static_cast<std::size_t>(m)]; }

  // Index of the last nonzero coefficient, or -1 for the zero polynomial.
  int effective_degree() const;
  bool is_zero() const { return effective_degree() < 0; }
  double sum() const;

  double eval(double z) const;
  complex eval(complex z) const;

  ZPolynomial& operator+=(const ZPolynomial& other);
  ZPolynomial& operator*=(double factor);

  friend bool operator==(const ZPolynomial&, const ZPolynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

// Truncated product: coefficient m is sum_{i+j=m} a_i b_j for m <= degree_cap.
// Throws InvalidArgument when the truncation degrees differ.
ZPolynomial poly_mul(const ZPolynomial& a, const ZPolynomial& b);

// acc += factor * (a * b), truncated at acc.degree_cap().
void poly_mul_accumulate(ZPolynomial& acc, const ZPolynomial& a, const ZPolynomial& b,
                         double factor);

// Full (untruncated) convolution of two coefficient sequences.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b);

}  // namespace spitzer
