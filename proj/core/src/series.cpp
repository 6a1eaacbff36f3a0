#include "spitzer/series.hpp"

#include <cmath>
#include <sstream>

#include "spitzer/error.hpp"

namespace spitzer {
namespace {

constexpr int kMaxSpitzerTerms = 5000;

}  // namespace

USeries::USeries(int order_cap, int degree_cap) {
  if (order_cap < 0) throw InvalidArgument("USeries: negative order cap");
  coeffs_.assign(static_cast<std::size_t>(order_cap) + 1, ZPolynomial(degree_cap));
}

USeries::USeries(std::vector<ZPolynomial> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidArgument("USeries: empty coefficient vector");
  const int cap = coeffs_.front().degree_cap();
  for (const auto& c : coeffs_) {
    if (c.degree_cap() != cap) throw InvalidArgument("USeries: coefficients disagree on degree cap");
  }
}

complex USeries::eval(complex u, complex z) const {
  complex acc = 0.0;
  for (int n = order_cap(); n >= 0; --n) acc = acc * u + (*this)[n].eval(z);
  return acc;
}

USeries series_exp(const USeries& g) {
  if (!g[0].is_zero()) throw InvalidArgument("series_exp: constant term must be zero");
  const int order = g.order_cap();
  const int degree = g.degree_cap();
  USeries f(order, degree);
  f[0] = ZPolynomial::constant(1.0, degree);
  for (int n = 1; n <= order; ++n) {
    ZPolynomial& fn = f[n];
    for (int l = 1; l <= n; ++l) {
      poly_mul_accumulate(fn, g[l], f[n - l], static_cast<double>(l));
    }
    fn *= 1.0 / n;
  }
  return f;
}

USeries series_log(const USeries& f) {
  const int degree = f.degree_cap();
  if (f[0] != ZPolynomial::constant(1.0, degree)) {
    throw InvalidArgument("series_log: constant term must be the unit polynomial");
  }
  const int order = f.order_cap();
  // n g_n = n f_n - sum_{l=1}^{n-1} l g_l f_{n-l}
  USeries g(order, degree);
  for (int n = 1; n <= order; ++n) {
    ZPolynomial acc = f[n];
    acc *= static_cast<double>(n);
    for (int l = 1; l < n; ++l) {
      poly_mul_accumulate(acc, g[l], f[n - l], -static_cast<double>(l));
    }
    acc *= 1.0 / n;
    g[n] = std::move(acc);
  }
  return g;
}

USeries spitzer_series(const IncrementDistribution& dist, int order_cap, int degree_cap) {
  if (order_cap < 1) throw InvalidArgument("spitzer_series: order cap must be >= 1");
  if (degree_cap < 0) throw InvalidArgument("spitzer_series: degree cap must be >= 0");
  const auto walks = walk_pmfs(dist, order_cap);
  USeries g(order_cap, degree_cap);
  for (int l = 1; l <= order_cap; ++l) {
    g[l] = positive_part_pgf(walks[static_cast<std::size_t>(l - 1)], degree_cap);
    g[l] *= 1.0 / l;
  }
  return series_exp(g);
}

std::vector<complex> scalar_series_exp(std::span<const complex> g) {
  if (g.empty()) throw InvalidArgument("scalar_series_exp: empty series");
  if (g[0] != 0.0) throw InvalidArgument("scalar_series_exp: constant term must be zero");
  std::vector<complex> f(g.size(), 0.0);
  f[0] = 1.0;
  for (std::size_t n = 1; n < g.size(); ++n) {
    complex acc = 0.0;
    for (std::size_t l = 1; l <= n; ++l) acc += static_cast<double>(l) * g[l] * f[n - l];
    f[n] = acc / static_cast<double>(n);
  }
  return f;
}

std::vector<complex> spitzer_coefficients_at(const IncrementDistribution& dist, int order_cap,
                                             complex z) {
  if (order_cap < 0) throw InvalidArgument("spitzer_coefficients_at: negative order cap");
  std::vector<complex> g(static_cast<std::size_t>(order_cap) + 1, 0.0);
  if (order_cap >= 1) {
    const auto walks = walk_pmfs(dist, order_cap);
    for (int l = 1; l <= order_cap; ++l) {
      g[static_cast<std::size_t>(l)] =
          positive_part_pgf_at(walks[static_cast<std::size_t>(l - 1)], z) / static_cast<double>(l);
    }
  }
  return scalar_series_exp(g);
}

complex spitzer_eval(const IncrementDistribution& dist, complex u, complex z) {
  const double au = std::abs(u);
  if (!(au < 1.0)) throw InvalidArgument("spitzer_eval: |u| must be < 1");
  if (std::abs(z) > 1.0 + 1e-15) throw InvalidArgument("spitzer_eval: |z| must be <= 1");
  if (au == 0.0) return 1.0;

  // |E(z^{S_l^+})| <= 1 on the closed disk, so the exponent tail after L terms
  // is at most |u|^{L+1} / ((L+1)(1-|u|)).
  const std::vector<double> base(dist.pmf().begin(), dist.pmf().end());
  WalkPmf walk{1, -static_cast<long>(dist.s()), base};
  complex exponent = 0.0;
  complex u_power = 1.0;
  for (int l = 1;; ++l) {
    if (l > 1) {
      walk.probs = convolve(walk.probs, base);
      walk.l = l;
      walk.offset -= dist.s();
    }
    u_power *= u;
    exponent += u_power * positive_part_pgf_at(walk, z) / static_cast<double>(l);
    const double tail = std::pow(au, l + 1) / ((l + 1) * (1.0 - au));
    if (tail < 1e-17) break;
    if (l >= kMaxSpitzerTerms) {
      std::ostringstream msg;
      msg << "spitzer_eval: exponent series not converged after " << l << " terms at |u| = " << au;
      throw NumericalFailure(msg.str());
    }
  }
  return std::exp(exponent);
}

}  // namespace spitzer
