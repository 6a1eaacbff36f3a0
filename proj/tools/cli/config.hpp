#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spitzer/distribution.hpp"
#include "spitzer/error.hpp"
#include "spitzer/oracle.hpp"

namespace spitzer::cli {

// Raised for malformed or inconsistent configuration; the message carries the
// source name, line number and key when they are known.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class OutputFormat { csv, json };

enum class Check {
  functional_equation,
  numerator,
  coefficient_identity,
  log_residue,
  transform_grid,
  normalization,
};

std::string_view to_string(Check check);
Check check_from_string(std::string_view name);
std::vector<Check> all_checks();

struct Tolerances {
  double spitzer = 1e-11;                // spitzer table vs dp
  double inversion = 1e-9;               // product / pollaczek tables vs dp
  double transform = 1e-9;               // pointwise transform agreement
  double normalization = 1e-12;          // relative error of F(u, 1) (1 - u)
  double functional_equation = 1e-11;
  double numerator = 1e-9;
  double coefficient_identity = 1e-10;
  double log_residue = 1e-8;
};

struct RunConfig {
  FamilySpec distribution;
  std::vector<Method> methods{Method::dp};
  int n_max = 20;
  // Unset means max(5, n_max (J - s)^+), the full support of M_{n_max}.
  std::optional<int> m_max;
  std::vector<double> u_grid{0.1, 0.3, 0.5, 0.7};
  std::vector<double> z_grid{0.0, 0.25, 0.5, 0.75, 1.0};
  double v = 0.9;
  double u_radius = 0.5;
  int quadrature_nodes = 64;
  int max_doublings = 10;
  double quadrature_tol = 1e-13;
  int coefficient_l_max = 20;
  int coefficient_k_max = 20;
  int log_residue_nodes = 1024;
  // Unset means every check when a comparison is requested, none otherwise.
  std::optional<std::vector<Check>> checks;
  Tolerances tol;
  OutputFormat format = OutputFormat::csv;
  std::string output;  // empty: standard output
  bool verbose = false;

  // Methods in canonical order, with dp added whenever another method is present.
  std::vector<Method> effective_methods() const;
  std::vector<Check> effective_checks() const;
  bool comparisons_requested() const;
  int effective_m_max(const IncrementDistribution& dist) const;
  // Cross-field validation; throws ConfigError.
  void validate() const;
};

// Flat "key = value" lines; see README for the grammar. `source` names the
// input in diagnostics.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

std::vector<Method> parse_method_list(const std::string& text);
OutputFormat format_from_string(std::string_view name);
std::string_view to_string(OutputFormat format);

}  // namespace spitzer::cli
