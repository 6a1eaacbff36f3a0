#include "spitzer/polynomial.hpp"

#include <algorithm>

#include "spitzer/error.hpp"

namespace spitzer {

complex ipow(complex w, int k) {
  if (k < 0) return 1.0 / ipow(w, -k);
  complex result = 1.0;
  while (k > 0) {
    if (k & 1) result *= w;
    w *= w;
    k >>= 1;
  }
  return result;
}

double ipow(double w, int k) {
  if (k < 0) return 1.0 / ipow(w, -k);
  double result = 1.0;
  while (k > 0) {
    if (k & 1) result *= w;
    w *= w;
    k >>= 1;
  }
  return result;
}

ZPolynomial::ZPolynomial(int degree_cap) {
  if (degree_cap < 0) throw InvalidArgument("ZPolynomial: negative degree cap");
  coeffs_.assign(static_cast<std::size_t>(degree_cap) + 1, 0.0);
}

ZPolynomial::ZPolynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("ZPolynomial: empty coefficient vector");
}

ZPolynomial ZPolynomial::constant(double c, int degree_cap) {
  ZPolynomial p(degree_cap);
  p[0] = c;
  return p;
}

ZPolynomial ZPolynomial::monomial(int k, double c, int degree_cap) {
  ZPolynomial p(degree_cap);
  if (k >= 0 && k <= degree_cap) p[k] = c;
  return p;
}

int ZPolynomial::effective_degree() const {
  for (int m = degree_cap(); m >= 0; --m) {
    if (coeffs_[static_cast<std::size_t>(m)] != 0.0) return m;
  }
  return -1;
}

double ZPolynomial::sum() const {
  double total = 0.0;
  for (double c : coeffs_) total += c;
  return total;
}

double ZPolynomial::eval(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

complex ZPolynomial::eval(complex z) const {
  complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ZPolynomial& ZPolynomial::operator+=(const ZPolynomial& other) {
  if (other.degree_cap() != degree_cap()) {
    throw InvalidArgument("ZPolynomial: mismatched degree caps in addition");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

ZPolynomial& ZPolynomial::operator*=(double factor) {
  for (double& c : coeffs_) c *= factor;
  return *this;
}

void poly_mul_accumulate(ZPolynomial& acc, const ZPolynomial& a, const ZPolynomial& b,
                         double factor) {
  const int cap = acc.degree_cap();
  if (a.degree_cap() != cap || b.degree_cap() != cap) {
    throw InvalidArgument("poly_mul: mismatched degree caps");
  }
  const int deg_a = a.effective_degree();
  const int deg_b = b.effective_degree();
  if (deg_a < 0 || deg_b < 0) return;
  const double* pa = a.coeffs().data();
  const double* pb = b.coeffs().data();
  for (int i = 0; i <= deg_a; ++i) {
    const double ai = factor * pa[i];
    if (ai == 0.0) continue;
    const int j_end = std::min(deg_b, cap - i);
    for (int j = 0; j <= j_end; ++j) acc[i + j] += ai * pb[j];
  }
}

ZPolynomial poly_mul(const ZPolynomial& a, const ZPolynomial& b) {
  if (a.degree_cap() != b.degree_cap()) {
    throw InvalidArgument("poly_mul: mismatched degree caps");
  }
  ZPolynomial out(a.degree_cap());
  poly_mul_accumulate(out, a, b, 1.0);
  return out;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace spitzer
