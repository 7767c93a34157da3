// kreinverify: run verification suites for indefinite-metric Fock
// representations and emit JSON reports.
//
//   kreinverify verify --model <name|path> [--param k=v]... [--cutoff N] [--tol T]
//                      [--metric-tol T] [--seed S] [--checks list] [--out path]
//   kreinverify decompose --model <name|path> [--cutoff N]
//   kreinverify list-models
//
// Exit codes: 0 all checks pass, 1 at least one check failed, 2 configuration
// or model build error. Without --out the report goes to
// $KREINFOCK_REPORT_DIR/<model>-report.json when that variable is set, and to
// stdout otherwise.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "kreinfock/verifier.hpp"

namespace {

using kreinfock::Error;
using kreinfock::ErrorKind;

constexpr int kConfigExit = 2;

kreinfock::ModelParams parse_params(const std::vector<std::string>& raw) {
  kreinfock::ModelParams params;
  for (const std::string& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorKind::kConfigInvalid, "--param expects k=v, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw Error(ErrorKind::kConfigInvalid, "--param " + key + " is not a number");
    }
    params[key] = parsed;
  }
  return params;
}

std::filesystem::path default_report_path(const std::string& model) {
  const char* dir = std::getenv("KREINFOCK_REPORT_DIR");
  if (!dir || !*dir) return {};
  return std::filesystem::path(dir) / (std::filesystem::path(model).stem().string() + "-report.json");
}

void write_output(const std::string& text, const std::filesystem::path& path) {
  if (path.empty()) {
    std::cout << text << '\n';
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kConfigInvalid, "cannot write " + path.string());
  out << text << '\n';
}

void print_summary(const kreinfock::VerificationReport& report) {
  for (const auto& r : report.records) {
    std::cerr << "  " << kreinfock::to_string(r.verdict) << "  " << r.name << "  residual "
              << r.residual << " (tol " << r.tolerance << ")\n";
  }
  std::cerr << report.model.name << ": " << (report.passed() ? "PASS" : "FAIL") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify indefinite-metric (eta-) CCR/CAR Fock representations"};
  app.require_subcommand(1);

  std::string model;
  std::vector<std::string> raw_params;
  std::optional<int> cutoff;
  std::optional<double> tol;
  double metric_tol = kreinfock::kDefaultMetricTol;
  std::uint64_t seed = kreinfock::kDefaultSeed;
  std::string checks;
  std::string out;
  bool quiet = false;

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--model", model, "registered model name or JSON model file")->required();
  verify->add_option("--param", raw_params, "model parameter k=v (repeatable)");
  verify->add_option("--cutoff", cutoff, "maximum total particle number N");
  verify->add_option("--tol", tol, "override every check tolerance");
  verify->add_option("--metric-tol", metric_tol, "tolerance for metric/unitarity validation");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--checks", checks,
                     "comma list of relations,adjoint,vacuum,cyclicity,decomposition,dagger-swap");
  verify->add_option("--out", out, "report path");
  verify->add_flag("--quiet", quiet, "no per-check summary on stderr");

  std::string decompose_model;
  std::optional<int> decompose_cutoff;
  CLI::App* decompose = app.add_subcommand("decompose", "print fundamental decompositions");
  decompose->add_option("--model", decompose_model, "registered model name or JSON model file")
      ->required();
  decompose->add_option("--cutoff", decompose_cutoff, "maximum total particle number N");

  CLI::App* list = app.add_subcommand("list-models", "print the model catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (*list) {
      std::cout << kreinfock::list_models().dump(2) << '\n';
      return 0;
    }
    if (*decompose) {
      kreinfock::RunConfig config;
      config.model = decompose_model;
      config.cutoff = decompose_cutoff;
      kreinfock::ModelSpec spec = kreinfock::resolve_model(config);
      std::cout << kreinfock::describe_decomposition(spec).dump(2) << '\n';
      return 0;
    }

    kreinfock::RunConfig config;
    config.model = model;
    config.params = parse_params(raw_params);
    config.cutoff = cutoff;
    config.tol = tol;
    config.metric_tol = metric_tol;
    config.seed = seed;
    config.checks = kreinfock::parse_check_list(checks);
    kreinfock::VerificationReport report = kreinfock::run_suite(config);
    std::filesystem::path path = out.empty() ? default_report_path(model) : std::filesystem::path(out);
    write_output(report.to_json().dump(2), path);
    if (!quiet) print_summary(report);
    return kreinfock::exit_code(report);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kreinfock::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigExit;
  }
}
