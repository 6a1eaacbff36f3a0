#pragma once

#include <string>
#include <vector>

#include "spitzer/distribution.hpp"

namespace spitzer {

struct NamedDistribution {
  std::string name;
  IncrementDistribution dist;
};

// The six reference cases used for cross-method validation:
//   simple-walk   X in {-1, +1} with equal probability, s = 1
//   binomial      A ~ Bin(3, 0.4), s = 2
//   poisson       A ~ Poisson(1.2) truncated, s = 2
//   geometric     A ~ Geom(0.5) truncated, s = 1
//   a-equals-s    A == 2, s = 2
//   a-equals-0    A == 0, s = 2
std::vector<NamedDistribution> standard_distributions();

}  // namespace spitzer
