#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kchow/balance.hpp"
#include "kchow/geometry.hpp"

namespace kchow::cli {

using Json = nlohmann::ordered_json;

enum class Command { check, destabilize, chow_weight, df, expansion, limit, balance };
enum class Format { text, json };

/// Throws InputError for an unknown name.
Command parse_command(const std::string& name);
const char* to_string(Command c);

using Range = std::pair<long, long>;
/// "a..b" with a <= b. Throws InputError otherwise.
Range parse_range(const std::string& text);

struct JobSpec {
  Command command = Command::check;
  std::string input_path = "-";
  std::optional<long> gamma;
  std::optional<Range> gamma_range;
  std::optional<Range> r_samples;
  std::optional<Range> degrees;
  int bound = 3;
  double tol = 1e-9;
  double step = 0.5;
  std::size_t max_iter = 100000;
  /// Use a_i^(n-1) as Chow masses instead of the multiplicities.
  bool blowup = false;
  Format format = Format::text;
};

struct ParsedInput {
  geometry::WeightedCycle cycle;
  std::optional<geometry::DiagonalOnePS> weights;
  /// Set when some coordinate was a complex pair; only `balance` accepts that.
  std::optional<balance::Cycle> complex_points;
};

/// Throws SchemaError (with line/column or JSON pointer context),
/// NonRationalCoordinate, ZeroPoint, DimensionMismatch.
ParsedInput parse_input(const std::string& document, bool allow_complex = false);

/// The input schema for a cycle; parse_input(emit_cycle(z).dump()) == z.
Json emit_cycle(const geometry::WeightedCycle& z, const std::optional<geometry::DiagonalOnePS>& weights = {});

/// Recomputes a certificate from its own data: spanning points independent,
/// mass on V, strict ratio inequality, and the destabilizer weight identity.
bool verify_certificate(const Json& certificate);

struct RunResult {
  int exit_code = 0;
  std::string output;
};

/// Exit codes: 0 done, 1 unstable (check), 2 input error, 3 verification failure.
RunResult run(const JobSpec& job, const std::string& document);

}  // namespace kchow::cli
