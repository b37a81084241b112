// orbitframes run <problem.json> [--out report.json] [--seed N] [--tol X]
// orbitframes verify --level quick|full [--seed N]
//
// Exit codes: 0 success, 2 input error, 3 numerical error, 1 failed verify
// or unexpected error.

#include "orbitframes/errors.hpp"
#include "orbitframes/problem.hpp"
#include "orbitframes/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace orbitframes;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

int max_trunc_from_env() {
  const char* v = std::getenv("ORBITFRAMES_MAX_TRUNC");
  if (!v || !*v) return 16384;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 64 || n > (1L << 24)) {
    throw InputError(std::string("ORBITFRAMES_MAX_TRUNC must be an integer in [64, 2^24], got \"") + v + "\"");
  }
  return static_cast<int>(n);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path.string());
  os << content;
}

int run(const std::string& problem_path, const std::string& out, const RunOptions& options, bool timing) {
  std::ifstream is(problem_path);
  if (!is) throw InputError("cannot open " + problem_path);
  io::Json problem;
  try {
    problem = io::Json::parse(is);
  } catch (const io::Json::parse_error& e) {
    throw InputError(problem_path + ": " + e.what());
  }

  const auto start = std::chrono::steady_clock::now();
  const RunResult r = run_problem(problem, options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  io::Json report = r.report;
  if (timing) report["wall_time_s"] = seconds;
  const std::string text = report.dump(2) + "\n";

  const std::string target = !out.empty() ? out : r.output.value_or("");
  if (target.empty()) {
    std::cout << text;
  } else {
    const fs::path path(target);
    write_file(path, text);
    for (const auto& csv : r.csv) {
      fs::path p = path;
      p.replace_filename(path.stem().string() + "_" + csv.name + ".csv");
      write_file(p, csv.content);
    }
  }
  if (!timing) std::cerr << "wall time " << seconds << " s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Frame analysis of operator orbits"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  double tol = 1e-10;
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--tol", tol, "rank / kernel tolerance")->capture_default_str();

  auto* run_cmd = app.add_subcommand("run", "run a problem file and write a JSON report");
  std::string problem_path;
  std::string out;
  bool timing = false;
  run_cmd->add_option("problem", problem_path, "problem JSON file")->required();
  run_cmd->add_option("--out", out, "report path (CSV files are written beside it)");
  run_cmd->add_flag("--timing", timing, "record wall time in the report");

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance battery");
  std::string level = "quick";
  verify_cmd->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*run_cmd) {
      RunOptions options;
      options.seed = seed;
      options.tol = tol;
      options.max_trunc = max_trunc_from_env();
      return run(problem_path, out, options, timing);
    }
    VerifyOptions options;
    options.level = level == "full" ? VerifyLevel::Full : VerifyLevel::Quick;
    options.seed = seed;
    const VerifyReport report = run_verify(options);
    print_report(std::cout, report);
    return report.all_passed() ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const io::Json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
