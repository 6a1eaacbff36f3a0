#pragma once

#include <ostream>

#include "run.hpp"

namespace spitzer::cli {

// Header `n,m,method,probability`, one row per table cell, tables in method
// order, probabilities printed with %.17g.
void write_csv(std::ostream& out, const RunResult& result);

// Tables, environment echo and agreement report as one JSON document.
void write_json(std::ostream& out, const RunResult& result);

// Human-readable summary; `verbose` adds the environment echo.
void write_report(std::ostream& out, const RunResult& result, bool verbose);

}  // namespace spitzer::cli
