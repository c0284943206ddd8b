// kchow: Chow stability, destabilizers and Donaldson-Futaki invariants of
// weighted point configurations. One JSON document in, one report out.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "kchow/cli.hpp"
#include "kchow/errors.hpp"

namespace {

std::string slurp(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw kchow::InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chow stability and Donaldson-Futaki invariants of weighted 0-cycles on P^n"};
  app.set_help_flag("-h,--help");

  std::string command, input = "-", format = "text";
  std::string gamma_range, r_samples, degrees;
  long gamma = 0;
  kchow::cli::JobSpec job;

  app.add_option("command", command, "check | destabilize | chow-weight | df | expansion | limit | balance")
      ->required();
  app.add_option("input", input, "input JSON document, - for stdin");
  auto* g = app.add_option("--gamma", gamma, "polarisation level (df; chow-weight at level gamma)");
  app.add_option("--gamma-range", gamma_range, "a..b (expansion, default 4..8)");
  app.add_option("--r-samples", r_samples, "a..b (df, expansion; default 2..n+5)");
  app.add_option("--degrees", degrees, "a..b probe degrees (limit, default 1..3)");
  app.add_option("--bound", job.bound, "weight bound for the exhaustive 1-PS search (destabilize)");
  app.add_option("--tol", job.tol, "residual tolerance (balance)");
  app.add_option("--step", job.step, "initial step (balance)");
  app.add_option("--max-iter", job.max_iter, "iteration cap (balance)");
  app.add_flag("--blowup", job.blowup, "use a_i^(n-1) as Chow masses");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  job.format = format == "json" ? kchow::cli::Format::json : kchow::cli::Format::text;
  std::string document;
  try {
    job.command = kchow::cli::parse_command(command);
    job.input_path = input;
    if (*g) {
      if (gamma < 1) throw kchow::InputError("--gamma must be at least 1");
      job.gamma = gamma;
    }
    if (!gamma_range.empty()) job.gamma_range = kchow::cli::parse_range(gamma_range);
    if (!r_samples.empty()) job.r_samples = kchow::cli::parse_range(r_samples);
    if (!degrees.empty()) job.degrees = kchow::cli::parse_range(degrees);
    document = slurp(input);
  } catch (const kchow::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto result = kchow::cli::run(job, document);
  (result.exit_code >= 2 ? std::cerr : std::cout) << result.output;
  return result.exit_code;
}
