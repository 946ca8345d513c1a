#include "factpow/cli.hpp"

#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "factpow/certify.hpp"
#include "factpow/errors.hpp"
#include "factpow/predictor.hpp"
#include "factpow/sigma_analyzer.hpp"

namespace factpow {

namespace {

Json precision_json(const PrecisionConfig& cfg, std::optional<Bits> used = std::nullopt) {
  Json j = Json::object();
  if (used) j["bits_used"] = *used;
  j["start_bits"] = cfg.start_bits;
  j["max_bits"] = cfg.max_bits;
  j["growth_factor"] = cfg.growth_factor;
  return j;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json sigma_json(const SigmaRecord& r) {
  Json j = Json::object();
  j["n"] = r.n;
  j["sigma"] = r.sigma;
  j["nu"] = r.nu();
  j["t_enclosure"] = interval_json(r.t_enclosure);
  j["bits"] = r.bits;
  return j;
}

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool is_scalar_array(const Json& v) {
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

void render(std::ostringstream& os, const std::string& key, const Json& v) {
  if (v.is_object()) {
    if (v.size() == 2 && v.contains("lo") && v.contains("hi")) {
      os << key << ": [" << scalar_text(v["lo"]) << ", " << scalar_text(v["hi"]) << "]\n";
      return;
    }
    for (const auto& [k, sub] : v.items()) render(os, key.empty() ? k : key + "." + k, sub);
    return;
  }
  if (v.is_array()) {
    if (is_scalar_array(v)) {
      os << key << ":";
      bool first = true;
      for (const auto& e : v) {
        os << (first ? " " : ", ") << scalar_text(e);
        first = false;
      }
      os << "\n";
      return;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Json& e = v[i];
      if (e.is_object() && e.contains("passed") && e.contains("name")) {
        os << (e["passed"].get<bool>() ? "PASS " : "FAIL ");
        if (e.contains("suite")) os << "[" << scalar_text(e["suite"]) << "] ";
        os << scalar_text(e["name"]);
        if (e.contains("detail")) os << ": " << scalar_text(e["detail"]);
        os << "\n";
      } else {
        render(os, key + "[" + std::to_string(i) + "]", e);
      }
    }
    return;
  }
  os << key << ": " << scalar_text(v) << "\n";
}

void require_a_above_one(const Rational& a) {
  if (a.num() <= a.den()) throw UsageError("a must exceed 1");
}

}  // namespace

Json interval_json(const Interval& x) {
  Json j = Json::object();
  j["lo"] = x.lo_string();
  j["hi"] = x.hi_string();
  return j;
}

Json OutputRecord::to_json() const {
  Json j = Json::object();
  j["command"] = command;
  j["inputs"] = inputs;
  j["results"] = results;
  j["precision"] = precision;
  j["passed"] = passed;
  j["error"] = optional_json(error);
  return j;
}

OutputRecord OutputRecord::from_json(const Json& j) {
  OutputRecord r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  r.results = j.at("results");
  r.precision = j.at("precision");
  r.passed = j.at("passed").get<bool>();
  if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
  return r;
}

std::string OutputRecord::to_text() const {
  std::ostringstream os;
  os << "command: " << command << "\n";
  render(os, "", inputs);
  render(os, "", results);
  render(os, "precision", precision);
  if (error) os << "error: " << *error << "\n";
  os << "status: " << (passed ? "ok" : "failed") << "\n";
  return os.str();
}

OutputRecord cmd_na(std::string_view a_literal, const CliOptions& opts) {
  Rational a = Rational::parse(a_literal);
  require_a_above_one(a);

  PredictConfig cfg;
  cfg.precision = opts.precision;
  cfg.with_oracle = opts.oracle;
  cfg.oracle_guard = opts.guard;
  PredictionOutcome out = predict_na(a, cfg);

  OutputRecord rec;
  rec.command = "na";
  rec.inputs["a"] = std::string(a_literal);
  rec.inputs["a_exact"] = a.to_string();
  rec.results["n"] = out.n;
  rec.results["m"] = out.trivial() ? Json(nullptr) : Json(out.m);
  rec.results["case"] = out.case_label ? Json(std::string(to_string(*out.case_label))) : Json(nullptr);
  rec.results["segment"] = out.segment_values;
  rec.results["ell"] = optional_json(out.ell);
  rec.results["candidates"] = out.candidates;
  rec.results["exact"] = optional_json(out.exact);
  rec.results["agrees"] = optional_json(out.agrees);
  rec.results["confirmed"] = out.exact.has_value();
  rec.precision = precision_json(opts.precision, out.trivial() ? std::nullopt : std::optional<Bits>(out.bits));
  rec.passed = out.agrees.value_or(true);
  return rec;
}

OutputRecord cmd_sigma(std::string_view kind, std::uint64_t n, const CliOptions& opts) {
  SeqKind k = seq_kind_from_string(kind);
  if (n == 0) throw UsageError("sigma requires n >= 1");
  SigmaRecord r = sigma(k, n, opts.precision);
  OutputRecord rec;
  rec.command = "sigma";
  rec.inputs["kind"] = std::string(to_string(k));
  rec.inputs["n"] = n;
  rec.results["sigma"] = r.sigma;
  rec.results["nu"] = r.nu();
  rec.results["t_enclosure"] = interval_json(r.t_enclosure);
  rec.precision = precision_json(opts.precision, r.bits);
  return rec;
}

OutputRecord cmd_segment(std::string_view kind, std::uint64_t n, const CliOptions& opts) {
  SeqKind k = seq_kind_from_string(kind);
  SegmentReport seg = segment(k, n, opts.precision);
  auto placement_failure = check_segment_placements(seg);

  OutputRecord rec;
  rec.command = "segment";
  rec.inputs["kind"] = std::string(to_string(k));
  rec.inputs["n"] = n;
  rec.results["m"] = seg.m;
  rec.results["first_index"] = seg.first_index();
  rec.results["values"] = seg.values();
  rec.results["value_count"] = std::string(to_string(seg.value_count));
  rec.results["ell"] = optional_json(seg.ell);
  rec.results["case"] = seg.case_label ? Json(std::string(to_string(*seg.case_label))) : Json(nullptr);
  rec.results["placements"] = placement_failure ? Json(*placement_failure) : Json("ok");
  Json terms = Json::array();
  for (const auto& t : seg.terms) terms.push_back(sigma_json(t));
  rec.results["terms"] = terms;
  rec.precision = precision_json(opts.precision, seg.bits);
  rec.passed = seg.value_count != ValueCount::More && !placement_failure;
  return rec;
}

OutputRecord cmd_breakpoints(std::string_view kind, std::size_t count, const CliOptions& opts) {
  SeqKind k = seq_kind_from_string(kind);
  if (count == 0) throw UsageError("breakpoints requires count >= 1");
  BreakpointConfig cfg;
  cfg.precision = opts.precision;
  auto bp = breakpoints(k, count, cfg);

  OutputRecord rec;
  rec.command = "breakpoints";
  rec.inputs["kind"] = std::string(to_string(k));
  rec.inputs["count"] = count;
  rec.results["breakpoints"] = bp;
  Json growth = Json::array();
  bool all = true;
  for (std::size_t i = 0; i < bp.size(); ++i) {
    bool ok = breakpoint_growth_holds(k, i + 1, bp[i]);
    growth.push_back(ok);
    all = all && ok;
  }
  rec.results["growth_bound_holds"] = growth;
  rec.precision = precision_json(opts.precision);
  rec.passed = all;
  return rec;
}

OutputRecord cmd_table(int max_exponent, const CliOptions& opts) {
  if (max_exponent < 1 || max_exponent > 12) throw UsageError("table exponent must be in 1..12");
  OutputRecord rec;
  rec.command = "table";
  rec.inputs["max_exponent"] = max_exponent;
  Json values = Json::array();
  Json rows = Json::array();
  std::uint64_t n = 1;
  Bits bits = 0;
  for (int k = 1; k <= max_exponent; ++k) {
    n *= 10;
    SigmaRecord r = sigma(SeqKind::E_SEQ, n, opts.precision);
    values.push_back(r.sigma);
    Json row = Json::object();
    row["exponent"] = k;
    row["sigma"] = r.sigma;
    row["t_minus_n"] = interval_json(r.t_enclosure - Interval::from_uint(n, r.bits));
    row["bits"] = r.bits;
    rows.push_back(row);
    bits = std::max(bits, r.bits);
  }
  rec.results["sigma"] = values;
  rec.results["rows"] = rows;
  rec.precision = precision_json(opts.precision, bits);
  return rec;
}

OutputRecord cmd_scan(std::uint64_t n_lo, std::uint64_t n_hi, std::size_t samples, const CliOptions& opts) {
  if (samples == 0) throw UsageError("scan requires at least one sample per interval");
  PredictConfig cfg;
  cfg.precision = opts.precision;
  cfg.with_oracle = true;
  cfg.oracle_guard = opts.guard;
  RangeReport rep = verify_range(n_lo, n_hi, samples, cfg, opts.threads);

  OutputRecord rec;
  rec.command = "scan";
  rec.inputs["n_lo"] = n_lo;
  rec.inputs["n_hi"] = n_hi;
  rec.inputs["samples"] = samples;
  rec.results["predictions"] = rep.predictions;
  rec.results["agreements"] = rep.agreements;
  rec.results["case_counts"] = Json(rep.case_counts);
  rec.results["outcome_counts"] = Json(rep.outcome_counts);
  rec.results["singleton_outside_nm1"] = rep.singleton_outside_nm1;
  Json failures = Json::array();
  for (const auto& f : rep.failures) {
    Json j = Json::object();
    j["a"] = f.a.to_string();
    j["n"] = f.n;
    j["candidates"] = f.candidates;
    j["exact"] = optional_json(f.exact);
    j["reason"] = f.reason;
    failures.push_back(j);
  }
  rec.results["failures"] = failures;
  rec.precision = precision_json(opts.precision);
  rec.passed = rep.passed() && rep.singleton_outside_nm1 == 0;
  return rec;
}

OutputRecord cmd_certify(std::string_view suite, const CliOptions& opts) {
  auto checks = certify(suite, opts.precision);
  OutputRecord rec;
  rec.command = "certify";
  rec.inputs["suite"] = suite.empty() ? Json("all") : Json(std::string(suite));
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    Json j = Json::object();
    j["suite"] = c.suite;
    j["name"] = c.name;
    j["passed"] = c.passed;
    j["detail"] = c.detail;
    list.push_back(j);
    if (!c.passed) ++failed;
  }
  rec.results["checks"] = list;
  rec.results["total"] = checks.size();
  rec.results["failed"] = failed;
  rec.precision = precision_json(opts.precision);
  rec.passed = failed == 0;
  return rec;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thresholds n_a = min{n : a^n <= n!} and the sigma staircase of e (n!)^(1/n)", "factpow"};
  app.require_subcommand(1);

  CliOptions opts;
  bool json = false;
  app.add_option("--bits-start", opts.precision.start_bits, "Starting precision in bits")->capture_default_str();
  app.add_option("--bits-max", opts.precision.max_bits, "Precision ceiling in bits")->capture_default_str();
  app.add_flag("--oracle,!--no-oracle", opts.oracle, "Confirm predictions with the exact oracle");
  app.add_flag("--json", json, "Emit one JSON record instead of text");
  app.add_option("--guard", opts.guard, "Factorial guard for the exact oracle")->capture_default_str();
  app.add_option("--threads", opts.threads, "Worker threads for scan (0 = all cores)")->capture_default_str();

  std::string a_text;
  auto* na = app.add_subcommand("na", "Candidates for n_a and, within the guard, the exact value");
  na->add_option("a", a_text, "a > 1 as p/q, integer or decimal (decimals are exact)")->required();

  std::string kind;
  std::uint64_t n = 0;
  auto* sig = app.add_subcommand("sigma", "sigma_n with the enclosure of T_n");
  sig->add_option("kind", kind, "S_SEQ or E_SEQ")->required();
  sig->add_option("n", n, "Index n >= 1")->required();

  auto* seg = app.add_subcommand("segment", "Segment sigma_{n-m}..sigma_n and its case");
  seg->add_option("kind", kind, "S_SEQ or E_SEQ")->required();
  seg->add_option("n", n, "Index n >= 3")->required();

  std::size_t count = 0;
  auto* bps = app.add_subcommand("breakpoints", "Breakpoints n_1 < n_2 < ...");
  bps->add_option("kind", kind, "S_SEQ or E_SEQ")->required();
  bps->add_option("count", count, "How many")->required();

  int max_exp = 12;
  auto* table = app.add_subcommand("table", "sigma_(10^k) for k = 1..max_exponent");
  table->add_option("max_exponent", max_exp, "1..12")->capture_default_str();

  std::uint64_t n_lo = 3, n_hi = 100;
  std::size_t samples = 2;
  auto* scan = app.add_subcommand("scan", "Check predictions against the oracle for n in [n_lo, n_hi]");
  scan->add_option("n_lo", n_lo, "First n (>= 3)")->required();
  scan->add_option("n_hi", n_hi, "Last n")->required();
  scan->add_option("samples", samples, "Sample points per interval")->capture_default_str();

  std::string suite;
  auto* cert = app.add_subcommand("certify", "Run the certification suites");
  cert->add_option("suite", suite, "Suite name; all suites when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  OutputRecord rec;
  int status = kExitOk;
  try {
    opts.precision.validate();
    if (*na) rec = cmd_na(a_text, opts);
    else if (*sig) rec = cmd_sigma(kind, n, opts);
    else if (*seg) rec = cmd_segment(kind, n, opts);
    else if (*bps) rec = cmd_breakpoints(kind, count, opts);
    else if (*table) rec = cmd_table(max_exp, opts);
    else if (*scan) rec = cmd_scan(n_lo, n_hi, samples, opts);
    else rec = cmd_certify(suite, opts);
    if (!rec.passed) status = kExitCheckFailed;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FalsificationError& e) {
    rec.command = app.get_subcommands().front()->get_name();
    rec.passed = false;
    rec.error = std::string("falsification: ") + e.what();
    status = kExitCheckFailed;
  } catch (const std::exception& e) {
    rec.command = app.get_subcommands().front()->get_name();
    rec.passed = false;
    rec.error = e.what();
    status = kExitError;
  }

  if (json) {
    out << rec.to_json().dump(2) << "\n";
  } else {
    out << rec.to_text();
  }
  return status;
}

}  // namespace factpow
