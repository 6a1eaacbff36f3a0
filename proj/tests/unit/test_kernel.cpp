#include <gtest/gtest.h>

#include <cmath>

#include "generators.hpp"
#include "spitzer/catalog.hpp"
#include "spitzer/error.hpp"
#include "spitzer/kernel.hpp"
#include "spitzer/series.hpp"

namespace spitzer {
namespace {

const IncrementDistribution kWalk = explicit_pmf({0.5, 0.0, 0.5}, 1);

TEST(PolynomialRoots, Quadratic) {
  // (z - 2)(z + 3) = z^2 + z - 6
  const std::vector<complex> c{-6.0, 1.0, 1.0};
  auto roots = polynomial_roots(c);
  ASSERT_EQ(roots.size(), 2u);
  std::sort(roots.begin(), roots.end(), [](complex a, complex b) { return a.real() < b.real(); });
  EXPECT_NEAR(std::abs(roots[0] + 3.0), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(roots[1] - 2.0), 0.0, 1e-13);
  const std::vector<complex> bad{1.0, 0.0};
  EXPECT_THROW(polynomial_roots(bad), InvalidArgument);
}

TEST(FindKernelRoots, DeterministicAllZero) {
  for (int s : {1, 2, 4}) {
    const auto d = deterministic(s, s);
    const auto rs = find_kernel_roots(d, 0.6);
    ASSERT_EQ(static_cast<int>(rs.roots.size()), s);
    EXPECT_EQ(rs.zero_multiplicity, s);
    for (complex r : rs.roots) EXPECT_EQ(r, complex(0.0));
    EXPECT_EQ(rs.clusters.size(), 1u);
    EXPECT_EQ(rs.max_modulus, 0.0);
  }
}

TEST(FindKernelRoots, SquareRoots) {
  const auto rs = find_kernel_roots(deterministic(0, 2), 0.25);
  ASSERT_EQ(rs.roots.size(), 2u);
  EXPECT_NEAR(std::abs(rs.roots[0] - 0.5) * std::abs(rs.roots[0] + 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(rs.roots[0] + rs.roots[1]), 0.0, 1e-15);
  EXPECT_NEAR(rs.max_modulus, 0.5, 1e-15);
  EXPECT_EQ(rs.clusters.size(), 2u);
}

TEST(FindKernelRoots, SimpleWalkClosedForm) {
  const auto rs = find_kernel_roots(kWalk, 0.5);
  ASSERT_EQ(rs.roots.size(), 1u);
  EXPECT_NEAR(std::abs(rs.roots[0] - (2.0 - std::sqrt(3.0))), 0.0, 1e-15);
  EXPECT_LE(rs.max_residual(), 1e-15);
  ASSERT_EQ(rs.outer_roots.size(), 1u);
  EXPECT_NEAR(std::abs(rs.outer_roots[0] - (2.0 + std::sqrt(3.0))), 0.0, 1e-13);
}

TEST(FindKernelRoots, Errors) {
  EXPECT_THROW(find_kernel_roots(kWalk, 1.0), InvalidArgument);
  EXPECT_THROW(find_kernel_roots(kWalk, complex(0.0, -1.2)), InvalidArgument);
}

TEST(ProductEval, ValueAtOne) {
  for (const auto& [name, d] : standard_distributions()) {
    SCOPED_TRACE(name);
    for (double u : {0.1, 0.5, 0.9}) {
      const auto rs = find_kernel_roots(d, u);
      const complex f = product_eval(d, u, 1.0, rs);
      EXPECT_NEAR(std::abs(f - 1.0 / (1.0 - u)) * (1.0 - u), 0.0, 1e-12);
    }
  }
}

TEST(ProductEval, ZeroIncrementIsGeometric) {
  const auto d = deterministic(3, 3);
  const double u = 0.4;
  const auto rs = find_kernel_roots(d, u);
  for (complex z : {complex(0.0), complex(0.3, 0.2), complex(-0.9), complex(1.0)}) {
    EXPECT_NEAR(std::abs(product_eval(d, u, z, rs) - 1.0 / (1.0 - u)), 0.0, 1e-14);
  }
}

TEST(ProductEval, SimpleWalkMatchesSeries) {
  const double u = 0.5;
  const auto f = spitzer_series(kWalk, 60, 60);
  const auto rs = find_kernel_roots(kWalk, u);
  EXPECT_NEAR(std::abs(product_eval(kWalk, u, 0.5, rs) - f.eval(u, 0.5)), 0.0, 1e-10);
}

TEST(ProductEval, Errors) {
  const auto rs = find_kernel_roots(kWalk, 0.5);
  EXPECT_THROW(product_eval(kWalk, 0.4, 0.5, rs), InvalidArgument);
  EXPECT_THROW(product_eval(kWalk, 0.5, rs.roots[0], rs), InvalidArgument);
  EXPECT_THROW(product_eval(kWalk, 0.5, rs.outer_roots[0], rs), InvalidArgument);
  EXPECT_THROW(product_eval(binomial(3, 0.4, 2), 0.5, 0.3, rs), InvalidArgument);
}

TEST(LogResidue, SingleRootAtU) {
  const auto d = deterministic(0, 1);
  const auto chk = root_logresidue_check(d, 0.25, 0.5, 0.35, 256);
  EXPECT_NEAR(std::abs(chk.lhs - std::log(1.0 / 3.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(chk.lhs - chk.rhs), 0.0, 1e-12);
}

TEST(LogResidue, RootsAtOrigin) {
  const auto d = deterministic(2, 2);
  const auto chk = root_logresidue_check(d, 0.6, 0.7, 0.3, 512);
  EXPECT_NEAR(std::abs(chk.lhs - 2.0 * std::log(0.7)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(chk.lhs - chk.rhs), 0.0, 1e-12);
}

TEST(LogResidue, SimpleWalk) {
  const auto chk = root_logresidue_check(kWalk, 0.5, 0.6, 0.4, 512);
  const double z0 = 2.0 - std::sqrt(3.0);
  EXPECT_NEAR(chk.lhs.real(), std::log((0.6 - z0) / (1.0 - z0)), 1e-15);
  EXPECT_NEAR(std::abs(chk.lhs - chk.rhs), 0.0, 1e-10);
}

TEST(LogResidue, Errors) {
  EXPECT_THROW(root_logresidue_check(kWalk, 0.5, 0.6, 0.2, 512), InvalidArgument);   // a < z_0
  EXPECT_THROW(root_logresidue_check(kWalk, 0.5, 0.35, 0.4, 512), InvalidArgument);  // z < a
  EXPECT_THROW(root_logresidue_check(kWalk, 1.0, 0.6, 0.4, 512), InvalidArgument);
}

// Properties over random (dist, u).

TEST(KernelProperties, RoucheCountResidualsSymmetry) {
  testing::Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = testing::random_distribution(rng, 4, 10, true);
    const double u = testing::uniform(rng, 0.01, 0.95);
    const auto rs = find_kernel_roots(d, u);
    EXPECT_EQ(static_cast<int>(rs.roots.size()), d.s());
    EXPECT_LT(rs.max_modulus, 1.0);
    EXPECT_LE(rs.max_residual(), 1e-10);
    EXPECT_LE(conjugate_asymmetry(rs), 1e-10);
  }
}

TEST(KernelProperties, ComplexUHasNoSymmetryRequirement) {
  testing::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_distribution(rng, 3, 8);
    const complex u = std::polar(testing::uniform(rng, 0.05, 0.95), testing::uniform(rng, -3.0, 3.0));
    const auto rs = find_kernel_roots(d, u);
    EXPECT_EQ(static_cast<int>(rs.roots.size()), d.s());
    EXPECT_LE(rs.max_residual(), 1e-10);
  }
}

TEST(KernelProperties, PolishNeverIncreasesResidual) {
  testing::Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testing::random_distribution(rng, 3, 8);
    const double u = testing::uniform(rng, 0.05, 0.95);
    KernelRootOptions raw;
    raw.max_polish_iterations = 0;
    const auto before = find_kernel_roots(d, u, raw);
    const auto after = find_kernel_roots(d, u);
    for (std::size_t k = 0; k < after.roots.size(); ++k) {
      // Sorting can permute roots; compare against the matching raw root.
      double matched = std::numeric_limits<double>::infinity();
      std::size_t best = 0;
      for (std::size_t j = 0; j < before.roots.size(); ++j) {
        const double dist = std::abs(before.roots[j] - after.roots[k]);
        if (dist < matched) {
          matched = dist;
          best = j;
        }
      }
      EXPECT_LE(after.residuals[k], before.residuals[best]);
    }
  }
}

TEST(KernelProperties, ProductWithinSeriesTailBound) {
  testing::Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = testing::random_distribution(rng, 3, 6);
    const double u = testing::uniform(rng, 0.05, 0.8);
    const double z = testing::uniform(rng, 0.0, 1.0);
    const int n = 40;
    const auto coeffs = spitzer_coefficients_at(d, n, z);
    complex partial = 0.0;
    for (int k = n; k >= 0; --k) partial = partial * u + coeffs[static_cast<std::size_t>(k)];
    const auto rs = find_kernel_roots(d, u);
    const double bound = std::pow(u, n + 1) / (1.0 - u) + 1e-10;
    EXPECT_LE(std::abs(product_eval(d, u, z, rs) - partial), bound);
  }
}

}  // namespace
}  // namespace spitzer
