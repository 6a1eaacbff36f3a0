#pragma once

#include <complex>
#include <span>
#include <vector>

#include "spitzer/distribution.hpp"

namespace spitzer {

// The s zeros z_k(u) of k(w) = w^s - u A(w) inside the unit disk.
struct RootSet {
  complex u;
  // Exactly s roots, ordered by modulus then argument. Roots that are zero
  // because P(A = j) = 0 for small j are exact zeros.
  std::vector<complex> roots;
  // |z_k^s - u A(z_k)| per root.
  std::vector<double> residuals;
  // Partition of root indices; roots closer than the cluster tolerance share a group.
  std::vector<std::vector<int>> clusters;
  double max_modulus = 0.0;
  // Number of roots at the origin obtained by exact factorization of w^r.
  int zero_multiplicity = 0;
  // Kernel roots outside the unit disk (poles of F(u, .)).
  std::vector<complex> outer_roots;

  double max_residual() const;
};

struct KernelRootOptions {
  double cluster_tolerance = 1e-7;
  // Roots are selected by |z| < 1 - selection_margin.
  double selection_margin = 1e-12;
  // Newton polishing stops at this residual, when a step fails to reduce the
  // residual, or after max_polish_iterations steps.
  double polish_target = 0.0;
  int max_polish_iterations = 50;
};

// Coefficients c_0..c_D (ascending) of w^s - u A(w), D = max(s, J), with
// trailing exact zeros removed.
std::vector<complex> kernel_coefficients(const IncrementDistribution& dist, complex u);

complex kernel_eval(const IncrementDistribution& dist, complex u, complex w);
complex kernel_derivative(const IncrementDistribution& dist, complex u, complex w);

// All roots of the polynomial with ascending coefficients `coeffs` (leading
// coefficient nonzero), as eigenvalues of the balanced companion matrix.
std::vector<complex> polynomial_roots(std::span<const complex> coeffs);

// Companion-matrix roots of the kernel, selection of the s roots in the open
// unit disk, then Newton polishing. Throws NumericalFailure when the number of
// selected roots differs from s, InvalidArgument when |u| >= 1.
RootSet find_kernel_roots(const IncrementDistribution& dist, complex u,
                          const KernelRootOptions& options = {});

// F(u, z) = 1/(z^s - u A(z)) * prod_k (z - z_k)/(1 - z_k). Exact zero roots
// are divided out of the kernel analytically so z = 0 is admissible for them.
// Throws InvalidArgument when z lies within relative distance 1e-12 of any
// other kernel root, or when `roots` was computed for a different u.
complex product_eval(const IncrementDistribution& dist, complex u, complex z,
                     const RootSet& roots);

// Largest distance between a root and the conjugate of its matched partner;
// zero for a conjugation-closed multiset.
double conjugate_asymmetry(const RootSet& roots);

struct LogResidueCheck {
  // sum_k ln((z - z_k)/(1 - z_k)) with the principal branch.
  complex lhs;
  // Trapezoidal value of (1/2 pi i) oint_{|w|=a} ln((z-w)/(1-w)) k'(w)/k(w) dw.
  complex rhs;
  double min_kernel_modulus = 0.0;
};

// Both sides of the logarithmic-residue identity over the circle |w| = a with
// `nodes` equally spaced points. Requires real u in (0,1) and
// max|z_k| < a < z < 1.
LogResidueCheck root_logresidue_check(const IncrementDistribution& dist, double u, double z,
                                      double a, int nodes);

}  // namespace spitzer
