#pragma once

#include "spitzer/catalog.hpp"
#include "spitzer/contour.hpp"
#include "spitzer/distribution.hpp"
#include "spitzer/error.hpp"
#include "spitzer/kernel.hpp"
#include "spitzer/oracle.hpp"
#include "spitzer/polynomial.hpp"
#include "spitzer/series.hpp"
