#include "spitzer/contour.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spitzer/error.hpp"

namespace spitzer {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Trapezoid on nested grids. sample(j, total) returns the integrand value
// (already multiplied by w) at angle 2 pi j / total; finish maps the mean to
// the quantity whose successive values are compared.
template <class Sample, class Finish>
QuadratureResult doubling_trapezoid(Sample&& sample, int base_nodes, const QuadratureRule& rule,
                                    Finish&& finish, const char* what) {
  complex sum = 0.0;
  for (int j = 0; j < base_nodes; ++j) sum += sample(j, base_nodes);
  int total = base_nodes;
  complex previous = finish(sum / static_cast<double>(total));
  for (int level = 1; level <= rule.max_doublings; ++level) {
    total *= 2;
    for (int j = 1; j < total; j += 2) sum += sample(j, total);
    const complex current = finish(sum / static_cast<double>(total));
    const double change = std::abs(current - previous);
    if (change < rule.tol) return QuadratureResult{current, total, change};
    previous = current;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << what << ": no convergence to " << rule.tol << " after " << rule.max_doublings
      << " doublings (" << total << " nodes); last estimate " << previous;
  throw NumericalFailure(msg.str());
}

void check_certificate(const IncrementDistribution& dist, const RadiusCertificate& cert) {
  if (!(cert.b > 1.0) || !(cert.b < dist.analyticity_radius())) {
    throw InvalidArgument("radius certificate: b must lie in (1, R)");
  }
  const double ratio = cert.v * dist.pgf(cert.b) / ipow(cert.b, dist.s());
  if (std::abs(ratio - cert.ratio) > 1e-12 * std::max(1.0, ratio) || !(ratio < 1.0)) {
    throw InvalidArgument("radius certificate does not hold for this distribution");
  }
}

}  // namespace

void QuadratureRule::validate() const {
  if (nodes < 16 || !std::has_single_bit(static_cast<unsigned>(nodes))) {
    throw InvalidArgument("quadrature: nodes must be a power of two >= 16");
  }
  if (max_doublings < 0 || max_doublings > 24) {
    throw InvalidArgument("quadrature: max_doublings must be in [0, 24]");
  }
  if (!(tol > 0.0)) throw InvalidArgument("quadrature: tol must be positive");
}

RadiusCertificate certify_radius(const IncrementDistribution& dist, double v, double b,
                                 double min_safety) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("certify_radius: v must be in (0, 1)");
  if (!(b > 1.0) || !(b < dist.analyticity_radius())) {
    throw InvalidArgument("certify_radius: b must lie in (1, R)");
  }
  const double ratio = v * dist.pgf(b) / ipow(b, dist.s());
  if (!(ratio <= 1.0 - min_safety)) {
    std::ostringstream msg;
    msg << "certify_radius: v A(b)/b^s = " << ratio << " at b = " << b << " exceeds "
        << 1.0 - min_safety;
    throw NumericalFailure(msg.str());
  }
  return RadiusCertificate{b, v, ratio};
}

RadiusCertificate choose_outer_radius(const IncrementDistribution& dist, double v,
                                      const RadiusSearchOptions& options) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument("choose_outer_radius: v must be in (0, 1)");
  if (!(options.b_cap > 1.0) || options.grid_points < 2) {
    throw InvalidArgument("choose_outer_radius: need b_cap > 1 and at least two grid points");
  }
  const double upper = std::min(dist.analyticity_radius(), options.b_cap);
  const double log_upper = std::log(upper);
  const int count = options.grid_points;
  auto grid = [&](int i) { return std::exp(log_upper * i / (count + 1)); };
  const double limit = 1.0 - options.min_safety;

  int last = 0;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= count; ++i) {
    const double b = grid(i);
    const double ratio = v * dist.pgf(b) / ipow(b, dist.s());
    best_ratio = std::min(best_ratio, ratio);
    if (ratio <= limit && last == i - 1) last = i;
  }
  if (last == 0) {
    std::ostringstream msg;
    msg << "choose_outer_radius: no admissible b in (1, " << upper << ") for v = " << v
        << "; best v A(b)/b^s seen " << best_ratio;
    throw NumericalFailure(msg.str());
  }
  // Nearest grid point to sqrt(b_last) in log scale, i.e. index last / 2.
  const int pick = std::max(1, (last + 1) / 2);
  return certify_radius(dist, v, grid(pick), options.min_safety);
}

QuadratureResult cauchy_coeff_detailed(const std::function<complex(complex)>& f, int n,
                                       const CircleQuadrature& quad) {
  quad.rule.validate();
  if (n < 0) throw InvalidArgument("cauchy_coeff: n must be >= 0");
  if (!(quad.radius > 0.0)) throw InvalidArgument("cauchy_coeff: radius must be positive");
  const double r = quad.radius;
  const double scale = std::pow(r, -n);
  auto sample = [&](int j, int total) {
    const double theta = kTwoPi * j / total;
    // f(w) w^{-n}; the w from dw cancels against the 1/w in w^{-(n+1)}.
    return f(std::polar(r, theta)) * std::polar(scale, -std::fmod(static_cast<double>(n) * j, total) *
                                                           kTwoPi / total);
  };
  return doubling_trapezoid(sample, quad.rule.nodes, quad.rule, [](complex m) { return m; },
                            "cauchy_coeff");
}

complex cauchy_coeff(const std::function<complex(complex)>& f, int n,
                     const CircleQuadrature& quad) {
  return cauchy_coeff_detailed(f, n, quad).value;
}

PollaczekEvaluator::PollaczekEvaluator(const IncrementDistribution& dist, RadiusCertificate cert,
                                       QuadratureRule rule)
    : dist_(&dist), cert_(cert), rule_(rule) {
  rule_.validate();
  check_certificate(dist, cert_);
}

const PollaczekEvaluator::Level& PollaczekEvaluator::level(int index, complex u) {
  if (u != cached_u_) {
    std::fill(log_valid_.begin(), log_valid_.end(), false);
    cached_u_ = u;
  }
  while (static_cast<int>(levels_.size()) <= index) {
    const int idx = static_cast<int>(levels_.size());
    const int total = rule_.nodes << idx;
    Level lv;
    for (int j = idx == 0 ? 0 : 1; j < total; j += idx == 0 ? 1 : 2) {
      const complex w = std::polar(cert_.b, kTwoPi * j / total);
      lv.nodes.push_back(w);
      lv.ratio.push_back(dist_->pgf(w) / ipow(w, dist_->s()));
    }
    levels_.push_back(std::move(lv));
    log_valid_.push_back(false);
  }
  Level& lv = levels_[static_cast<std::size_t>(index)];
  if (!log_valid_[static_cast<std::size_t>(index)]) {
    lv.log_term.resize(lv.nodes.size());
    for (std::size_t j = 0; j < lv.nodes.size(); ++j) {
      const complex arg = 1.0 - u * lv.ratio[j];
      if (!(arg.real() > 0.0)) {
        throw NumericalFailure("pollaczek: log argument left the right half-plane");
      }
      lv.log_term[j] = std::log(arg) * lv.nodes[j];
    }
    log_valid_[static_cast<std::size_t>(index)] = true;
  }
  return lv;
}

QuadratureResult PollaczekEvaluator::eval(complex u, complex z) {
  if (std::abs(u) > cert_.v * (1.0 + 1e-14)) {
    throw InvalidArgument("pollaczek_eval: |u| exceeds the certified v");
  }
  if (std::abs(z) > cert_.b - 1e-6) throw InvalidArgument("pollaczek_eval: |z| must be <= b - 1e-6");
  if (z == 1.0) return QuadratureResult{1.0 / (1.0 - u), 0, 0.0};

  const complex one_minus_z = 1.0 - z;
  auto finish = [&](complex exponent) { return std::exp(exponent) / (1.0 - u); };
  auto level_sum = [&](int index) {
    const Level& lv = level(index, u);
    complex acc = 0.0;
    for (std::size_t j = 0; j < lv.nodes.size(); ++j) {
      const complex w = lv.nodes[j];
      acc += lv.log_term[j] * one_minus_z / ((w - 1.0) * (w - z));
    }
    return acc;
  };

  complex sum = level_sum(0);
  int total = rule_.nodes;
  complex previous = finish(sum / static_cast<double>(total));
  for (int lv = 1; lv <= rule_.max_doublings; ++lv) {
    total *= 2;
    sum += level_sum(lv);
    const complex current = finish(sum / static_cast<double>(total));
    const double change = std::abs(current - previous);
    if (change < rule_.tol) return QuadratureResult{current, total, change};
    previous = current;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "pollaczek_eval: no convergence to " << rule_.tol << " after " << rule_.max_doublings
      << " doublings at u = " << u << ", z = " << z << "; last estimate " << previous;
  throw NumericalFailure(msg.str());
}

QuadratureResult pollaczek_eval_detailed(const IncrementDistribution& dist, complex u, complex z,
                                         const RadiusCertificate& cert,
                                         const QuadratureRule& rule) {
  PollaczekEvaluator evaluator(dist, cert, rule);
  return evaluator.eval(u, z);
}

complex pollaczek_eval(const IncrementDistribution& dist, complex u, complex z,
                       const RadiusCertificate& cert, const QuadratureRule& rule) {
  return pollaczek_eval_detailed(dist, u, z, cert, rule).value;
}

complex pollaczek_exponent(const IncrementDistribution& dist, complex u, complex z, double b,
                           int nodes) {
  if (nodes < 1) throw InvalidArgument("pollaczek_exponent: nodes must be positive");
  complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const complex w = std::polar(b, kTwoPi * j / nodes);
    const complex arg = 1.0 - u * dist.pgf(w) / ipow(w, dist.s());
    sum += (1.0 - z) / ((w - 1.0) * (w - z)) * std::log(arg) * w;
  }
  return sum / static_cast<double>(nodes);
}

CoefficientIdentity verify_coeff_identity(const IncrementDistribution& dist, int l, int k,
                                          const RadiusCertificate& cert,
                                          const QuadratureRule& rule) {
  if (l < 1 || k < 1) throw InvalidArgument("verify_coeff_identity: l and k must be >= 1");
  check_certificate(dist, cert);
  const int index = k + dist.s() * l;
  // A^l has degree J l; with more nodes than that the trapezoid is exact.
  CircleQuadrature quad{cert.b, rule};
  const unsigned needed = static_cast<unsigned>(dist.max_jump()) * static_cast<unsigned>(l) + 1;
  quad.rule.nodes = std::max(rule.nodes, static_cast<int>(std::bit_ceil(needed)));
  const complex integral =
      cauchy_coeff([&](complex w) { return ipow(dist.pgf(w), l); }, index, quad);
  return CoefficientIdentity{integral.real(), walk_pmf(dist, l).at(k)};
}

InversionResult invert_bivariate(const TransformRowSampler& sampler, int n_max, int m_max,
                                 const InversionOptions& options) {
  if (n_max < 0 || m_max < 0) throw InvalidArgument("invert_bivariate: negative table size");
  if (!(options.u_radius > 0.0 && options.u_radius < 1.0)) {
    throw InvalidArgument("invert_bivariate: u radius must be in (0, 1)");
  }
  if (!(options.z_radius > 0.0)) throw InvalidArgument("invert_bivariate: z radius must be positive");
  if (options.z_nodes < 1 || options.initial_u_nodes < 1) {
    throw InvalidArgument("invert_bivariate: node counts must be positive");
  }

  const int nz = static_cast<int>(std::bit_ceil(static_cast<unsigned>(options.z_nodes)));
  if (nz <= m_max) throw InvalidArgument("invert_bivariate: need more z nodes than m_max");
  std::vector<complex> z_points(static_cast<std::size_t>(nz));
  for (int j = 0; j < nz; ++j) z_points[static_cast<std::size_t>(j)] = std::polar(options.z_radius, kTwoPi * j / nz);

  int nu = static_cast<int>(std::bit_ceil(
      static_cast<unsigned>(std::max(options.initial_u_nodes, 2 * (n_max + 1)))));
  const std::size_t rows = static_cast<std::size_t>(n_max) + 1;

  // samples[k] holds F(u_k, z_j) for the current u grid of size nu.
  std::vector<std::vector<complex>> samples;
  // With real coefficients, F(u_{total-k}, z_{nz-j}) = conj F(u_k, z_j); rows
  // past the midpoint are mirrored from rows already sampled.
  auto sample_row = [&](int j_u, int total, const std::vector<std::vector<complex>>& done) {
    std::vector<complex> row(static_cast<std::size_t>(nz));
    if (options.real_coefficients && 2 * j_u > total) {
      const auto& mirror = done[static_cast<std::size_t>(total - j_u)];
      for (int j = 0; j < nz; ++j) row[static_cast<std::size_t>(j)] = std::conj(mirror[static_cast<std::size_t>((nz - j) % nz)]);
      return row;
    }
    sampler(std::polar(options.u_radius, kTwoPi * j_u / total), z_points, row);
    return row;
  };
  for (int k = 0; k < nu; ++k) samples.push_back(sample_row(k, nu, samples));

  double max_abs = 0.0;
  auto coefficients = [&](int total) {
    // coeff[n][j] = (1/total) sum_k F(u_k, z_j) e^{-2 pi i k n / total}, unscaled.
    std::vector<complex> twiddle(static_cast<std::size_t>(total));
    for (int t = 0; t < total; ++t) twiddle[static_cast<std::size_t>(t)] = std::polar(1.0, -kTwoPi * t / total);
    std::vector<complex> coeff(rows * static_cast<std::size_t>(nz), 0.0);
    for (int k = 0; k < total; ++k) {
      const auto& row = samples[static_cast<std::size_t>(k)];
      for (std::size_t n = 0; n < rows; ++n) {
        const complex tw = twiddle[(static_cast<std::size_t>(k) * n) % static_cast<std::size_t>(total)];
        complex* dst = &coeff[n * static_cast<std::size_t>(nz)];
        for (int j = 0; j < nz; ++j) dst[j] += row[static_cast<std::size_t>(j)] * tw;
      }
    }
    for (auto& c : coeff) c /= static_cast<double>(total);
    return coeff;
  };
  for (const auto& row : samples) {
    for (complex v : row) max_abs = std::max(max_abs, std::abs(v));
  }

  std::vector<complex> coeff = coefficients(nu);
  double change = std::numeric_limits<double>::infinity();
  int doublings = 0;
  while (true) {
    if (doublings == options.max_u_doublings) {
      std::ostringstream msg;
      msg << "invert_bivariate: u-extraction not converged after " << doublings
          << " doublings (" << nu << " nodes), last change " << change;
      throw NumericalFailure(msg.str());
    }
    std::vector<std::vector<complex>> refined(static_cast<std::size_t>(2 * nu));
    for (int k = 0; k < nu; ++k) refined[static_cast<std::size_t>(2 * k)] = std::move(samples[static_cast<std::size_t>(k)]);
    for (int k = 1; k < 2 * nu; k += 2) {
      refined[static_cast<std::size_t>(k)] = sample_row(k, 2 * nu, refined);
      for (complex v : refined[static_cast<std::size_t>(k)]) max_abs = std::max(max_abs, std::abs(v));
    }
    samples = std::move(refined);
    nu *= 2;
    ++doublings;
    std::vector<complex> next = coefficients(nu);
    change = 0.0;
    for (std::size_t i = 0; i < next.size(); ++i) change = std::max(change, std::abs(next[i] - coeff[i]));
    coeff = std::move(next);
    if (change <= options.u_tol * std::max(1.0, max_abs)) break;
  }

  InversionResult out;
  out.u_nodes = nu;
  out.z_nodes = nz;
  out.u_last_change = change;
  out.probs.assign(rows * (static_cast<std::size_t>(m_max) + 1), 0.0);
  std::vector<complex> twiddle(static_cast<std::size_t>(nz));
  for (int t = 0; t < nz; ++t) twiddle[static_cast<std::size_t>(t)] = std::polar(1.0, -kTwoPi * t / nz);
  for (std::size_t n = 0; n < rows; ++n) {
    const double u_scale = std::pow(options.u_radius, -static_cast<double>(n));
    const complex* fn = &coeff[n * static_cast<std::size_t>(nz)];
    for (int m = 0; m <= m_max; ++m) {
      complex acc = 0.0;
      for (int j = 0; j < nz; ++j) {
        acc += fn[j] * twiddle[(static_cast<std::size_t>(j) * static_cast<std::size_t>(m)) % static_cast<std::size_t>(nz)];
      }
      const double z_scale = std::pow(options.z_radius, -static_cast<double>(m));
      out.probs[n * (static_cast<std::size_t>(m_max) + 1) + static_cast<std::size_t>(m)] =
          acc.real() / nz * u_scale * z_scale;
    }
  }
  return out;
}

}  // namespace spitzer
