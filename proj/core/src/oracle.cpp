#include "spitzer/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spitzer/error.hpp"

namespace spitzer {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::dp: return "dp";
    case Method::spitzer: return "spitzer";
    case Method::product_inversion: return "product";
    case Method::pollaczek_inversion: return "pollaczek";
  }
  return "unknown";
}

Method method_from_string(std::string_view name) {
  if (name == "dp") return Method::dp;
  if (name == "spitzer") return Method::spitzer;
  if (name == "product" || name == "product-inversion") return Method::product_inversion;
  if (name == "pollaczek" || name == "pollaczek-inversion") return Method::pollaczek_inversion;
  throw InvalidArgument("unknown method '" + std::string(name) + "'");
}

DistributionTable::DistributionTable(Method method, int n_max, int m_max)
    : method_(method), n_max_(n_max), m_max_(m_max) {
  if (n_max < 0 || m_max < 0) throw InvalidArgument("DistributionTable: negative dimensions");
  probs_.assign((static_cast<std::size_t>(n_max) + 1) * (static_cast<std::size_t>(m_max) + 1), 0.0);
  complete_.assign(static_cast<std::size_t>(n_max) + 1, 0);
  overflow_.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
}

std::span<const double> DistributionTable::row(int n) const {
  return std::span<const double>(probs_).subspan(index(n, 0), static_cast<std::size_t>(m_max_) + 1);
}

double DistributionTable::row_sum(int n) const {
  double total = 0.0;
  for (double p : row(n)) total += p;
  return total;
}

bool row_is_complete(const IncrementDistribution& dist, int n, int m_max) {
  return static_cast<long>(m_max) >= static_cast<long>(n) * dist.upward_reach();
}

DistributionTable lindley_dp(const IncrementDistribution& dist, int n_max, int m_max) {
  DistributionTable table(Method::dp, n_max, m_max);
  const int s = dist.s();
  const int jumps = dist.max_jump();
  const auto pmf = dist.pmf();
  const std::size_t width = static_cast<std::size_t>(m_max) + static_cast<std::size_t>(s) * n_max + 1;

  std::vector<double> current(width, 0.0);
  std::vector<double> next(width, 0.0);
  current[0] = 1.0;
  double lost = 0.0;  // mass above the tracked window; it can never return below m_max

  auto record = [&](int n) {
    double above = lost;
    for (std::size_t m = 0; m < width; ++m) {
      if (m <= static_cast<std::size_t>(m_max)) {
        table.at(n, static_cast<int>(m)) = current[m];
      } else {
        above += current[m];
      }
    }
    table.set_overflow(n, above);
    table.set_complete(n, row_is_complete(dist, n, m_max));
  };
  record(0);

  for (int n = 1; n <= n_max; ++n) {
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t state = 0; state < width; ++state) {
      const double mass = current[state];
      if (mass == 0.0) continue;
      for (int j = 0; j <= jumps; ++j) {
        const double flow = mass * pmf[static_cast<std::size_t>(j)];
        const long target = static_cast<long>(state) + j - s;
        if (target <= 0) {
          next[0] += flow;
        } else if (static_cast<std::size_t>(target) < width) {
          next[static_cast<std::size_t>(target)] += flow;
        } else {
          lost += flow;
        }
      }
    }
    std::swap(current, next);
    record(n);
  }
  return table;
}

DistributionTable table_from_series(const IncrementDistribution& dist, const USeries& series,
                                    int n_max, int m_max) {
  if (n_max > series.order_cap() || m_max > series.degree_cap()) {
    throw InvalidArgument("table_from_series: table exceeds the series truncation");
  }
  DistributionTable table(Method::spitzer, n_max, m_max);
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= m_max; ++m) table.at(n, m) = series[n][m];
    table.set_complete(n, row_is_complete(dist, n, m_max));
    table.set_overflow(n, std::max(0.0, 1.0 - table.row_sum(n)));
  }
  return table;
}

double BoundarySeries::eval(double u) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * u + *it;
  return acc;
}

BoundarySeries boundary_series(const IncrementDistribution& dist, const DistributionTable& table,
                               int r) {
  if (r < 0 || r >= dist.s()) throw InvalidArgument("boundary_series: r must be in [0, s)");
  if (r > table.m_max()) throw InvalidArgument("boundary_series: table too narrow for r");
  BoundarySeries out;
  out.r = r;
  out.coeffs.resize(static_cast<std::size_t>(table.n_max()) + 1, 0.0);
  for (int n = 0; n <= table.n_max(); ++n) {
    double total = 0.0;
    for (int m = 0; m <= r; ++m) total += table.at(n, m) * dist.prob(r - m);
    out.coeffs[static_cast<std::size_t>(n)] = total;
  }
  return out;
}

double functional_equation_check(const IncrementDistribution& dist,
                                 const DistributionTable& table, int n, complex z) {
  if (n < 0 || n + 1 > table.n_max()) {
    throw InvalidArgument("functional_equation_check: rows n and n+1 must exist");
  }
  if (!table.complete(n) || !table.complete(n + 1)) {
    std::ostringstream msg;
    msg << "functional_equation_check: rows " << n << " and " << n + 1 << " must be complete";
    throw InvalidArgument(msg.str());
  }
  if (z == 0.0) throw InvalidArgument("functional_equation_check: z must be nonzero");

  auto pgf_row = [&](int row) {
    complex acc = 0.0;
    const auto probs = table.row(row);
    for (auto it = probs.rbegin(); it != probs.rend(); ++it) acc = acc * z + *it;
    return acc;
  };
  const int s = dist.s();
  const complex lhs = pgf_row(n + 1);
  complex rhs = pgf_row(n) * dist.pgf(z) * ipow(z, -s);
  for (int r = 0; r < s; ++r) {
    double boundary = 0.0;
    for (int m = 0; m <= std::min(r, table.m_max()); ++m) boundary += table.at(n, m) * dist.prob(r - m);
    rhs += boundary * (1.0 - ipow(z, r - s));
  }
  return std::abs(lhs - rhs);
}

double NumeratorCheck::residual() const {
  return std::max({root_residual, std::abs(value_at_one - 1.0), factorization_residual});
}

int numerator_rows_required(double u, double tol) {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("numerator_check: u must be in (0, 1)");
  if (!(tol > 0.0)) throw InvalidArgument("numerator_check: tol must be positive");
  int n = 0;
  while (std::pow(u, n + 1) / (1.0 - u) > tol / 10.0) ++n;
  return n;
}

NumeratorCheck numerator_check(const IncrementDistribution& dist, double u, const RootSet& roots,
                               double tol) {
  const int rows = numerator_rows_required(u, tol);
  return numerator_check(dist, u, roots, lindley_dp(dist, rows, dist.s() - 1), tol);
}

NumeratorCheck numerator_check(const IncrementDistribution& dist, double u, const RootSet& roots,
                               const DistributionTable& table, double tol) {
  const int rows = numerator_rows_required(u, tol);
  if (table.n_max() < rows) {
    std::ostringstream msg;
    msg << "numerator_check: table has " << table.n_max() << " rows beyond n = 0, need " << rows
        << " for the F_r tail bound at u = " << u;
    throw InvalidArgument(msg.str());
  }
  if (roots.u != complex(u, 0.0) || static_cast<int>(roots.roots.size()) != dist.s()) {
    throw InvalidArgument("numerator_check: root set does not match (dist, u)");
  }
  const int s = dist.s();
  std::vector<double> f(static_cast<std::size_t>(s));
  for (int r = 0; r < s; ++r) f[static_cast<std::size_t>(r)] = boundary_series(dist, table, r).eval(u);

  auto numerator = [&](complex z) {
    const complex zs = ipow(z, s);
    complex acc = zs;
    for (int r = 0; r < s; ++r) acc += u * (zs - ipow(z, r)) * f[static_cast<std::size_t>(r)];
    return acc;
  };

  NumeratorCheck out;
  out.n_max_used = table.n_max();
  for (complex zk : roots.roots) out.root_residual = std::max(out.root_residual, std::abs(numerator(zk)));
  out.value_at_one = numerator(1.0).real();

  const complex grid[] = {0.0, 0.25, 0.5, 0.75, 1.0, std::polar(0.9, 1.0), std::polar(0.6, 2.5),
                          complex(-0.5, 0.0)};
  for (complex z : grid) {
    complex factored = 1.0;
    for (complex zk : roots.roots) factored *= (z - zk) / (1.0 - zk);
    out.factorization_residual = std::max(out.factorization_residual, std::abs(numerator(z) - factored));
  }
  return out;
}

}  // namespace spitzer
