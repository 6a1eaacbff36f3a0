#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "spitzer/contour.hpp"

namespace spitzer::cli {
namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InvalidArgument("empty list element");
    items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& text) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("'" + text + "' is not a number");
  return value;
}

int parse_int(const std::string& text) {
  int value = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw InvalidArgument("'" + text + "' is not an integer");
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "yes" || text == "1") return true;
  if (text == "false" || text == "no" || text == "0") return false;
  throw InvalidArgument("'" + text + "' is not a boolean (true/false)");
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) out.push_back(parse_double(item));
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"family", [](RunConfig& c, const std::string& v) { c.distribution.family = family_from_string(v); }},
      {"s", [](RunConfig& c, const std::string& v) { c.distribution.s = parse_int(v); }},
      {"value", [](RunConfig& c, const std::string& v) { c.distribution.value = parse_int(v); }},
      {"p", [](RunConfig& c, const std::string& v) { c.distribution.p = parse_double(v); }},
      {"trials", [](RunConfig& c, const std::string& v) { c.distribution.trials = parse_int(v); }},
      {"lambda", [](RunConfig& c, const std::string& v) { c.distribution.lambda = parse_double(v); }},
      {"pmf", [](RunConfig& c, const std::string& v) { c.distribution.pmf = parse_doubles(v); }},
      {"tail_tolerance",
       [](RunConfig& c, const std::string& v) { c.distribution.tail_tolerance = parse_double(v); }},
      {"methods", [](RunConfig& c, const std::string& v) { c.methods = parse_method_list(v); }},
      {"n_max", [](RunConfig& c, const std::string& v) { c.n_max = parse_int(v); }},
      {"m_max", [](RunConfig& c, const std::string& v) { c.m_max = parse_int(v); }},
      {"u_grid", [](RunConfig& c, const std::string& v) { c.u_grid = parse_doubles(v); }},
      {"z_grid", [](RunConfig& c, const std::string& v) { c.z_grid = parse_doubles(v); }},
      {"v", [](RunConfig& c, const std::string& v) { c.v = parse_double(v); }},
      {"u_radius", [](RunConfig& c, const std::string& v) { c.u_radius = parse_double(v); }},
      {"quadrature.nodes", [](RunConfig& c, const std::string& v) { c.quadrature_nodes = parse_int(v); }},
      {"quadrature.max_doublings",
       [](RunConfig& c, const std::string& v) { c.max_doublings = parse_int(v); }},
      {"quadrature.tol", [](RunConfig& c, const std::string& v) { c.quadrature_tol = parse_double(v); }},
      {"coefficient.l_max",
       [](RunConfig& c, const std::string& v) { c.coefficient_l_max = parse_int(v); }},
      {"coefficient.k_max",
       [](RunConfig& c, const std::string& v) { c.coefficient_k_max = parse_int(v); }},
      {"log_residue.nodes",
       [](RunConfig& c, const std::string& v) { c.log_residue_nodes = parse_int(v); }},
      {"checks",
       [](RunConfig& c, const std::string& v) {
         std::vector<Check> checks;
         if (v == "all") {
           checks = all_checks();
         } else if (v != "none") {
           for (const auto& item : split_list(v)) checks.push_back(check_from_string(item));
         }
         c.checks = checks;
       }},
      {"tol.spitzer", [](RunConfig& c, const std::string& v) { c.tol.spitzer = parse_double(v); }},
      {"tol.inversion", [](RunConfig& c, const std::string& v) { c.tol.inversion = parse_double(v); }},
      {"tol.transform", [](RunConfig& c, const std::string& v) { c.tol.transform = parse_double(v); }},
      {"tol.normalization",
       [](RunConfig& c, const std::string& v) { c.tol.normalization = parse_double(v); }},
      {"tol.functional_equation",
       [](RunConfig& c, const std::string& v) { c.tol.functional_equation = parse_double(v); }},
      {"tol.numerator", [](RunConfig& c, const std::string& v) { c.tol.numerator = parse_double(v); }},
      {"tol.coefficient_identity",
       [](RunConfig& c, const std::string& v) { c.tol.coefficient_identity = parse_double(v); }},
      {"tol.log_residue", [](RunConfig& c, const std::string& v) { c.tol.log_residue = parse_double(v); }},
      {"format", [](RunConfig& c, const std::string& v) { c.format = format_from_string(v); }},
      {"output", [](RunConfig& c, const std::string& v) { c.output = v; }},
      {"verbose", [](RunConfig& c, const std::string& v) { c.verbose = parse_bool(v); }},
  };
  return table;
}

// Best guess at the config key behind a distribution construction error.
std::string distribution_key(std::string_view what) {
  const std::pair<std::string_view, std::string_view> markers[] = {
      {"tail tolerance", "tail_tolerance"}, {"truncation defect", "tail_tolerance"},
      {"s must", "s"},                      {"lambda", "lambda"},
      {"trials", "trials"},                 {"probabilit", "p"},
      {"p must", "p"},                      {"value", "value"},
      {"jump", "value"},                    {"increment distribution", "pmf"},
  };
  for (const auto& [marker, key] : markers) {
    if (what.find(marker) != std::string_view::npos) return std::string(key);
  }
  return "family";
}

// Cross-field checks. `where(key)` renders the location prefix for a key.
void validate_impl(const RunConfig& c, const std::function<std::string(const std::string&)>& where) {
  auto fail = [&](const std::string& key, const std::string& msg) {
    throw ConfigError(where(key) + msg);
  };
  try {
    (void)make_family(c.distribution);
  } catch (const InvalidArgument& e) {
    fail(distribution_key(e.what()), std::string("invalid distribution: ") + e.what());
  }
  if (c.methods.empty()) fail("methods", "at least one method is required");
  if (c.n_max < 0 || c.n_max > 5000) fail("n_max", "must be in [0, 5000]");
  if (c.m_max && (*c.m_max < 0 || *c.m_max > 1000000)) fail("m_max", "must be in [0, 1000000]");
  if (!(c.v > 0.0 && c.v < 1.0)) fail("v", "must be in (0, 1)");
  if (!(c.u_radius > 0.0 && c.u_radius < 1.0)) fail("u_radius", "must be in (0, 1)");
  const auto methods = c.effective_methods();
  const bool pollaczek =
      std::find(methods.begin(), methods.end(), Method::pollaczek_inversion) != methods.end();
  if (pollaczek && c.u_radius > c.v) fail("u_radius", "must not exceed v when pollaczek is selected");
  for (double u : c.u_grid) {
    if (!(u >= 0.0 && u <= 0.95)) fail("u_grid", "entries must lie in [0, 0.95]");
  }
  for (double z : c.z_grid) {
    if (!(z >= -1.0 && z <= 1.0)) fail("z_grid", "entries must lie in [-1, 1]");
  }
  const QuadratureRule rule{c.quadrature_nodes, c.max_doublings, c.quadrature_tol};
  try {
    rule.validate();
  } catch (const InvalidArgument& e) {
    fail("quadrature.nodes", e.what());
  }
  if (c.coefficient_l_max < 1) fail("coefficient.l_max", "must be >= 1");
  if (c.coefficient_k_max < 1) fail("coefficient.k_max", "must be >= 1");
  if (c.log_residue_nodes < 16) fail("log_residue.nodes", "must be >= 16");
  const std::pair<const char*, double> tols[] = {
      {"tol.spitzer", c.tol.spitzer},
      {"tol.inversion", c.tol.inversion},
      {"tol.transform", c.tol.transform},
      {"tol.normalization", c.tol.normalization},
      {"tol.functional_equation", c.tol.functional_equation},
      {"tol.numerator", c.tol.numerator},
      {"tol.coefficient_identity", c.tol.coefficient_identity},
      {"tol.log_residue", c.tol.log_residue},
  };
  for (const auto& [key, value] : tols) {
    if (!(value > 0.0)) fail(key, "must be positive");
  }
}

}  // namespace

std::string_view to_string(Check check) {
  switch (check) {
    case Check::functional_equation: return "functional_equation";
    case Check::numerator: return "numerator";
    case Check::coefficient_identity: return "coefficient_identity";
    case Check::log_residue: return "log_residue";
    case Check::transform_grid: return "transform_grid";
    case Check::normalization: return "normalization";
  }
  return "unknown";
}

std::vector<Check> all_checks() {
  return {Check::functional_equation, Check::numerator,      Check::coefficient_identity,
          Check::log_residue,         Check::transform_grid, Check::normalization};
}

Check check_from_string(std::string_view name) {
  for (Check c : all_checks()) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("unknown check '" + std::string(name) + "'");
}

std::vector<Method> parse_method_list(const std::string& text) {
  const std::string trimmed = trim(text);
  if (trimmed == "all") {
    return {Method::dp, Method::spitzer, Method::product_inversion, Method::pollaczek_inversion};
  }
  std::vector<Method> out;
  for (const auto& item : split_list(trimmed)) out.push_back(method_from_string(item));
  return out;
}

OutputFormat format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw InvalidArgument("unknown format '" + std::string(name) + "' (csv|json)");
}

std::string_view to_string(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

std::vector<Method> RunConfig::effective_methods() const {
  std::vector<Method> out;
  for (Method m : {Method::dp, Method::spitzer, Method::product_inversion, Method::pollaczek_inversion}) {
    const bool chosen = std::find(methods.begin(), methods.end(), m) != methods.end();
    if (chosen || (m == Method::dp && comparisons_requested())) out.push_back(m);
  }
  return out;
}

bool RunConfig::comparisons_requested() const {
  return std::any_of(methods.begin(), methods.end(), [](Method m) { return m != Method::dp; });
}

std::vector<Check> RunConfig::effective_checks() const {
  if (checks) return *checks;
  return comparisons_requested() ? all_checks() : std::vector<Check>{};
}

int RunConfig::effective_m_max(const IncrementDistribution& dist) const {
  if (m_max) return *m_max;
  return std::max(5, n_max * dist.upward_reach());
}

void RunConfig::validate() const {
  validate_impl(*this, [](const std::string& key) { return "key '" + key + "': "; });
}

RunConfig parse_config(std::istream& in, const std::string& source) {
  RunConfig config;
  std::map<std::string, int> lines;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto where = [&](const std::string& key) {
      std::ostringstream msg;
      msg << source << ":" << line_no << ": ";
      if (!key.empty()) msg << "key '" << key << "': ";
      return msg.str();
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where("") + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where("") + "missing key before '='");
    const auto setter = setters().find(key);
    if (setter == setters().end()) throw ConfigError(where(key) + "unknown key");
    if (value.empty()) throw ConfigError(where(key) + "missing value");
    if (lines.count(key)) {
      std::ostringstream msg;
      msg << "duplicate key (first set on line " << lines[key] << ")";
      throw ConfigError(where(key) + msg.str());
    }
    lines[key] = line_no;
    try {
      setter->second(config, value);
    } catch (const InvalidArgument& e) {
      throw ConfigError(where(key) + e.what());
    }
  }
  if (!lines.count("family")) throw ConfigError(source + ": key 'family' is required");
  if (!lines.count("s")) throw ConfigError(source + ": key 's' is required");
  validate_impl(config, [&](const std::string& key) {
    std::ostringstream msg;
    msg << source;
    if (auto it = lines.find(key); it != lines.end()) msg << ":" << it->second;
    msg << ": key '" << key << "': ";
    return msg.str();
  });
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  return parse_config(in, path.string());
}

}  // namespace spitzer::cli
