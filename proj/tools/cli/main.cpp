// spitzer-cli: computes P(M_n = m) for a reflected lattice walk by the
// selected methods and cross-checks them.
//
// Exit status: 0 when every comparison and check passes, 1 when any fails,
// 2 on configuration or numerical errors.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "config.hpp"
#include "output.hpp"
#include "run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Distribution of the reflected lattice random walk by four cross-validated methods"};
  std::string config_path;
  std::string output;
  std::string format;
  std::string methods;
  bool verbose = false;
  app.add_option("--config", config_path, "Run configuration (key = value lines)")->required();
  app.add_option("--output", output, "Output file; standard output when omitted");
  app.add_option("--format", format, "Table format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--methods", methods, "Comma-separated subset of dp,spitzer,product,pollaczek or 'all'");
  app.add_flag("--verbose", verbose, "Echo radii, node counts and truncation orders");
  CLI11_PARSE(app, argc, argv);

  namespace cli = spitzer::cli;
  try {
    cli::RunConfig config = cli::load_config(config_path);
    if (!output.empty()) config.output = output;
    if (!format.empty()) config.format = cli::format_from_string(format);
    if (!methods.empty()) {
      try {
        config.methods = cli::parse_method_list(methods);
      } catch (const spitzer::InvalidArgument& e) {
        throw cli::ConfigError(std::string("--methods: ") + e.what());
      }
    }
    if (verbose) config.verbose = true;
    config.validate();

    const cli::RunResult result = cli::run(config);

    auto emit = [&](std::ostream& out) {
      if (config.format == cli::OutputFormat::csv) {
        cli::write_csv(out, result);
      } else {
        cli::write_json(out, result);
      }
    };
    if (config.output.empty()) {
      emit(std::cout);
    } else {
      std::ofstream file(config.output, std::ios::binary);
      if (!file) throw spitzer::Error("cannot open output file '" + config.output + "'");
      emit(file);
      if (!file.flush()) throw spitzer::Error("failed writing '" + config.output + "'");
    }
    cli::write_report(std::cerr, result, config.verbose);
    return result.report.all_pass() ? 0 : 1;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const spitzer::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
