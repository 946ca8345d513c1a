#pragma once

// Command implementations behind the factpow tool. Each command returns an
// OutputRecord; rendering and exit codes are decided by run_cli.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "factpow/exact_core.hpp"
#include "factpow/mpinterval.hpp"

namespace factpow {

using Json = nlohmann::ordered_json;

struct OutputRecord {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Json precision = Json::object();
  /// False when any check failed or the command raised.
  bool passed = true;
  std::optional<std::string> error;

  Json to_json() const;
  static OutputRecord from_json(const Json& j);
  /// Line-oriented "key: value" rendering, keys in insertion order.
  std::string to_text() const;

  friend bool operator==(const OutputRecord& a, const OutputRecord& b) { return a.to_json() == b.to_json(); }
};

struct CliOptions {
  PrecisionConfig precision;
  bool oracle = true;
  std::uint64_t guard = FactorialCache::kDefaultGuard;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
};

/// Interval endpoints as decimal strings that still enclose the value.
Json interval_json(const Interval& x);

OutputRecord cmd_na(std::string_view a_literal, const CliOptions& opts = {});
OutputRecord cmd_sigma(std::string_view kind, std::uint64_t n, const CliOptions& opts = {});
OutputRecord cmd_segment(std::string_view kind, std::uint64_t n, const CliOptions& opts = {});
OutputRecord cmd_breakpoints(std::string_view kind, std::size_t count, const CliOptions& opts = {});
OutputRecord cmd_table(int max_exponent = 12, const CliOptions& opts = {});
OutputRecord cmd_scan(std::uint64_t n_lo, std::uint64_t n_hi, std::size_t samples, const CliOptions& opts = {});
OutputRecord cmd_certify(std::string_view suite = {}, const CliOptions& opts = {});

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2, kExitError = 3 };

/// Parses argv, runs one subcommand and writes its record to `out` (text or
/// JSON). Usage errors go to `err`. Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace factpow
