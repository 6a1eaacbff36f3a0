#include "spitzer/catalog.hpp"

namespace spitzer {

std::vector<NamedDistribution> standard_distributions() {
  std::vector<NamedDistribution> out;
  out.push_back({"simple-walk", explicit_pmf({0.5, 0.0, 0.5}, 1)});
  out.push_back({"binomial", binomial(3, 0.4, 2)});
  out.push_back({"poisson", poisson(1.2, 2)});
  out.push_back({"geometric", geometric(0.5, 1)});
  out.push_back({"a-equals-s", deterministic(2, 2)});
  out.push_back({"a-equals-0", deterministic(0, 2)});
  return out;
}

}  // namespace spitzer
