#include "spitzer/kernel.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <type_traits>

#include "spitzer/error.hpp"

namespace spitzer {
namespace {

complex horner(std::span<const complex> coeffs, complex w) {
  complex acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * w + *it;
  return acc;
}

complex horner_derivative(std::span<const complex> coeffs, complex w) {
  complex acc = 0.0;
  for (std::size_t i = coeffs.size(); i-- > 1;) acc = acc * w + static_cast<double>(i) * coeffs[i];
  return acc;
}

// Parlett-Reinsch balancing with powers of two, so the scaling is exact.
template <class Matrix>
void balance(Matrix& m) {
  const Eigen::Index n = m.rows();
  constexpr double gamma = 0.95;
  bool changed = true;
  int sweeps = 0;
  while (changed && sweeps++ < 100) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      double row = 0.0;
      double col = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        row += std::abs(m(i, j));
        col += std::abs(m(j, i));
      }
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < gamma * (col + row)) {
        changed = true;
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
      }
    }
  }
}

std::string describe_roots(std::span<const complex> roots) {
  std::ostringstream out;
  out.precision(6);
  for (const complex& r : roots) {
    out << "\n  " << r.real() << (r.imag() < 0 ? " - " : " + ") << std::abs(r.imag())
        << "i  |z| = " << std::abs(r);
  }
  return out.str();
}

std::vector<std::vector<int>> cluster_roots(std::span<const complex> roots, double tol) {
  const int n = static_cast<int>(roots.size());
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) {
      parent[static_cast<std::size_t>(i)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(i)])];
      i = parent[static_cast<std::size_t>(i)];
    }
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(roots[static_cast<std::size_t>(i)] - roots[static_cast<std::size_t>(j)]) < tol) {
        parent[static_cast<std::size_t>(find(j))] = find(i);
      }
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (slot[static_cast<std::size_t>(root)] < 0) {
      slot[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[static_cast<std::size_t>(root)])].push_back(i);
  }
  return groups;
}

bool relatively_close(complex z, complex root) {
  return std::abs(z - root) < 1e-12 * std::max(1.0, std::abs(root));
}

}  // namespace

double RootSet::max_residual() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

std::vector<complex> kernel_coefficients(const IncrementDistribution& dist, complex u) {
  const int degree = std::max(dist.s(), dist.max_jump());
  std::vector<complex> coeffs(static_cast<std::size_t>(degree) + 1, 0.0);
  for (int j = 0; j <= dist.max_jump(); ++j) coeffs[static_cast<std::size_t>(j)] = -u * dist.prob(j);
  coeffs[static_cast<std::size_t>(dist.s())] += 1.0;
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  return coeffs;
}

complex kernel_eval(const IncrementDistribution& dist, complex u, complex w) {
  return ipow(w, dist.s()) - u * dist.pgf(w);
}

complex kernel_derivative(const IncrementDistribution& dist, complex u, complex w) {
  return static_cast<double>(dist.s()) * ipow(w, dist.s() - 1) - u * dist.pgf_derivative(w);
}

std::vector<complex> polynomial_roots(std::span<const complex> coeffs) {
  if (coeffs.empty() || coeffs.back() == 0.0) {
    throw InvalidArgument("polynomial_roots: leading coefficient must be nonzero");
  }
  const Eigen::Index degree = static_cast<Eigen::Index>(coeffs.size()) - 1;
  if (degree == 0) return {};
  if (degree == 1) return {-coeffs[0] / coeffs[1]};

  // Real coefficients (real u) take the cheaper real Francis iteration.
  const bool real = std::all_of(coeffs.begin(), coeffs.end(), [](complex c) { return c.imag() == 0.0; });
  std::vector<complex> roots(static_cast<std::size_t>(degree));
  auto solve = [&](auto companion) {
    using Matrix = decltype(companion);
    using Scalar = typename Matrix::Scalar;
    companion.diagonal(-1).setOnes();
    for (Eigen::Index i = 0; i < degree; ++i) {
      const complex c = -coeffs[static_cast<std::size_t>(i)] / coeffs.back();
      if constexpr (std::is_same_v<Scalar, double>) {
        companion(i, degree - 1) = c.real();
      } else {
        companion(i, degree - 1) = c;
      }
    }
    balance(companion);
    using Solver = std::conditional_t<std::is_same_v<Scalar, double>, Eigen::EigenSolver<Matrix>,
                                      Eigen::ComplexEigenSolver<Matrix>>;
    Solver solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
      throw NumericalFailure("polynomial_roots: companion eigenvalue iteration did not converge");
    }
    for (Eigen::Index i = 0; i < degree; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  };
  if (real) {
    solve(Eigen::MatrixXd::Zero(degree, degree).eval());
  } else {
    solve(Eigen::MatrixXcd::Zero(degree, degree).eval());
  }
  return roots;
}

RootSet find_kernel_roots(const IncrementDistribution& dist, complex u,
                          const KernelRootOptions& options) {
  if (!(std::abs(u) < 1.0)) throw InvalidArgument("find_kernel_roots: |u| must be < 1");

  const std::vector<complex> coeffs = kernel_coefficients(dist, u);
  const int s = dist.s();

  // Factor out w^r exactly; the remaining polynomial has a nonzero constant term.
  int zeros = 0;
  while (coeffs[static_cast<std::size_t>(zeros)] == 0.0) ++zeros;
  const std::span<const complex> deflated(coeffs.begin() + zeros, coeffs.end());

  std::vector<complex> all = polynomial_roots(deflated);

  RootSet out;
  out.u = u;
  out.zero_multiplicity = std::min(zeros, s);
  out.roots.assign(static_cast<std::size_t>(zeros), complex(0.0, 0.0));

  const double inside = 1.0 - options.selection_margin;
  for (complex z : all) {
    if (std::abs(z) < inside) {
      out.roots.push_back(z);
    } else {
      out.outer_roots.push_back(z);
    }
  }
  if (static_cast<int>(out.roots.size()) != s) {
    std::vector<complex> listing(static_cast<std::size_t>(zeros), complex(0.0, 0.0));
    listing.insert(listing.end(), all.begin(), all.end());
    std::ostringstream msg;
    msg << "find_kernel_roots: expected " << s << " roots in the unit disk, found "
        << out.roots.size() << " at u = " << u << "; all kernel roots:" << describe_roots(listing);
    throw NumericalFailure(msg.str());
  }

  // Newton polishing on the full kernel, accepting only residual decreases.
  auto residual_at = [&](complex z) { return std::abs(horner(coeffs, z)); };
  for (std::size_t i = static_cast<std::size_t>(zeros); i < out.roots.size(); ++i) {
    complex z = out.roots[i];
    double res = residual_at(z);
    for (int it = 0; it < options.max_polish_iterations && res > options.polish_target; ++it) {
      const complex d = horner_derivative(coeffs, z);
      if (d == 0.0) break;
      const complex candidate = z - horner(coeffs, z) / d;
      const double cand_res = residual_at(candidate);
      if (!(cand_res < res)) break;
      z = candidate;
      res = cand_res;
    }
    out.roots[i] = z;
  }

  std::sort(out.roots.begin(), out.roots.end(), [](complex a, complex b) {
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
  });
  out.residuals.reserve(out.roots.size());
  for (complex z : out.roots) {
    out.residuals.push_back(residual_at(z));
    out.max_modulus = std::max(out.max_modulus, std::abs(z));
  }
  out.clusters = cluster_roots(out.roots, options.cluster_tolerance);
  return out;
}

complex product_eval(const IncrementDistribution& dist, complex u, complex z,
                     const RootSet& roots) {
  if (roots.u != u) throw InvalidArgument("product_eval: root set was computed for another u");
  if (static_cast<int>(roots.roots.size()) != dist.s()) {
    throw InvalidArgument("product_eval: root set does not match the distribution");
  }
  const std::vector<complex> coeffs = kernel_coefficients(dist, u);
  const int zeros = roots.zero_multiplicity;
  for (int i = 0; i < zeros; ++i) {
    if (coeffs[static_cast<std::size_t>(i)] != 0.0) {
      throw InvalidArgument("product_eval: root set does not match the distribution");
    }
  }
  for (std::size_t k = static_cast<std::size_t>(zeros); k < roots.roots.size(); ++k) {
    if (relatively_close(z, roots.roots[k])) {
      throw InvalidArgument("product_eval: z coincides with an in-disk kernel root");
    }
  }
  for (complex r : roots.outer_roots) {
    if (relatively_close(z, r)) throw InvalidArgument("product_eval: z is a pole (kernel root)");
  }

  // k(z) / z^zeros, evaluated on the deflated coefficients.
  const complex reduced_kernel =
      horner(std::span<const complex>(coeffs.begin() + zeros, coeffs.end()), z);
  complex product = 1.0;
  for (std::size_t k = static_cast<std::size_t>(zeros); k < roots.roots.size(); ++k) {
    product *= (z - roots.roots[k]) / (1.0 - roots.roots[k]);
  }
  return product / reduced_kernel;
}

double conjugate_asymmetry(const RootSet& roots) {
  const std::size_t n = roots.roots.size();
  std::vector<bool> used(n, false);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::size_t best = i;
    double best_dist = std::abs(roots.roots[i] - std::conj(roots.roots[i]));
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots.roots[i] - std::conj(roots.roots[j]));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    used[i] = used[best] = true;
    worst = std::max(worst, best_dist);
  }
  return worst;
}

LogResidueCheck root_logresidue_check(const IncrementDistribution& dist, double u, double z,
                                      double a, int nodes) {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("root_logresidue_check: u must be in (0, 1)");
  if (nodes < 1) throw InvalidArgument("root_logresidue_check: nodes must be positive");
  const RootSet roots = find_kernel_roots(dist, u);
  if (!(roots.max_modulus < a && a < z && z < 1.0)) {
    std::ostringstream msg;
    msg << "root_logresidue_check: need max|z_k| < a < z < 1, got max|z_k| = " << roots.max_modulus
        << ", a = " << a << ", z = " << z;
    throw InvalidArgument(msg.str());
  }

  LogResidueCheck out;
  for (complex zk : roots.roots) out.lhs += std::log((z - zk) / (1.0 - zk));

  const std::vector<complex> coeffs = kernel_coefficients(dist, u);
  out.min_kernel_modulus = std::numeric_limits<double>::infinity();
  complex sum = 0.0;
  for (int j = 0; j < nodes; ++j) {
    const double theta = 2.0 * std::numbers::pi * j / nodes;
    const complex w = std::polar(a, theta);
    const complex k = horner(coeffs, w);
    out.min_kernel_modulus = std::min(out.min_kernel_modulus, std::abs(k));
    sum += std::log((z - w) / (1.0 - w)) * horner_derivative(coeffs, w) / k * w;
  }
  if (out.min_kernel_modulus < 1e-12) {
    throw NumericalFailure("root_logresidue_check: kernel nearly vanishes on the contour");
  }
  out.rhs = sum / static_cast<double>(nodes);
  return out;
}

}  // namespace spitzer
