#pragma once

// Integer staircase attached to a real sequence T_1, T_2, ... with unit-ish
// increments: sigma_n is the least integer l with T_n < n + l, so that
// n + sigma_n - 1 <= T_n < n + sigma_n.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "factpow/mpinterval.hpp"

namespace factpow {

enum class SeqKind {
  S_SEQ,  // T_n = n * n^(1/n), T_1 = 1, increments below 1 + 1/n
  E_SEQ,  // T_n = e * n!^(1/n), T_1 = e, increments below 1 + (3/2)/n
};

std::string_view to_string(SeqKind kind);
/// Accepts "S_SEQ"/"s" and "E_SEQ"/"e" (case-insensitive); UsageError otherwise.
SeqKind seq_kind_from_string(std::string_view name);

/// Constant `a` with T_{n+1} - T_n < 1 + a/n for all n.
mpq_class increment_constant(SeqKind kind);

/// Enclosure of T_n for the given sequence.
Interval t_term(SeqKind kind, std::uint64_t n, Bits bits);

struct SigmaRecord {
  std::uint64_t n = 0;
  std::int64_t sigma = 0;
  Interval t_enclosure;
  Bits bits = 0;

  /// n + sigma, the least integer strictly above T_n.
  std::uint64_t nu() const { return n + static_cast<std::uint64_t>(sigma); }
};

/// Resolves sigma_n, escalating precision until the enclosure of T_n lies in a
/// single [k, k+1). Throws Unresolved naming the straddled boundary.
SigmaRecord sigma(SeqKind kind, std::uint64_t n, const PrecisionConfig& cfg = {});

/// sigma_1..sigma_n_max, index i holding sigma_{i+1}.
std::vector<SigmaRecord> sigma_scan(SeqKind kind, std::uint64_t n_max, const PrecisionConfig& cfg = {});

enum class ValueCount { One, Two, More };
std::string_view to_string(ValueCount count);

/// Position of the switch index l relative to n - m.
enum class SegmentCase { ONE_VALUE, TWO_ELL_EQ_NM, TWO_ELL_EQ_NM1, TWO_ELL_EQ_NM2, TWO_ELL_GE_NM3 };
std::string_view to_string(SegmentCase c);

struct SegmentReport {
  std::uint64_t n = 0;
  std::int64_t m = 0;
  /// sigma_{n-m}, ..., sigma_n with their enclosures.
  std::vector<SigmaRecord> terms;
  ValueCount value_count = ValueCount::One;
  /// l with sigma_{l+1} = sigma_l + 1, present for two-valued segments.
  std::optional<std::uint64_t> ell;
  /// Absent only when value_count is More.
  std::optional<SegmentCase> case_label;
  Bits bits = 0;

  std::vector<std::int64_t> values() const;
  std::uint64_t first_index() const { return n - static_cast<std::uint64_t>(m); }
};

/// Builds sigma_{n-m}, ..., sigma_n with m = sigma_n. Requires n >= 3 and
/// 2 <= m < n. A three-or-more valued segment is reported with value_count More
/// and no case label; callers treat it as a falsification.
SegmentReport segment(SeqKind kind, std::uint64_t n, const PrecisionConfig& cfg = {});

/// Same classification from an already computed scan (scan[i] is sigma_{i+1}).
SegmentReport segment_from_scan(const std::vector<SigmaRecord>& scan, std::uint64_t n);

/// Checks the placement of T_{n-m}, T_{n-m+1}, ... between consecutive
/// integers that the segment's case implies. Returns a description of the
/// first violated placement, or nullopt when all hold.
std::optional<std::string> check_segment_placements(const SegmentReport& report);

struct BreakpointConfig {
  PrecisionConfig precision;
  /// Maximum number of sigma evaluations before giving up.
  std::uint64_t budget = 100'000;
};

/// n_1 < n_2 < ... < n_count, where n_i is the largest u with
/// sigma_u = sigma_1 + (i - 1). Throws ResourceError with progress when the
/// budget runs out.
std::vector<std::uint64_t> breakpoints(SeqKind kind, std::size_t count, const BreakpointConfig& cfg = {});

/// True when every entry satisfies the growth lower bound for its sequence:
/// n_i >= 2^i (S_SEQ) or n_i >= 2 (5/3)^(i-1) + 1 (E_SEQ).
bool breakpoint_growth_holds(SeqKind kind, std::size_t i, std::uint64_t n_i);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  std::string first_failure;
};

struct AxiomReport {
  SeqKind kind = SeqKind::S_SEQ;
  std::uint64_t n_max = 0;
  std::vector<AxiomCheck> checks;
  std::uint64_t one_value_segments = 0;
  std::uint64_t two_value_segments = 0;
  std::uint64_t more_value_segments = 0;

  bool passed() const;
};

/// Verifies, for every n <= n_max: the increment bounds 1 <= T_{n+1} - T_n < 2
/// and < 1 + a/n, n <= T_n < T_1 + 2(n-1), unit steps of sigma, the nu
/// recursion, the small-index bounds on sigma, segment value counts and the
/// T placements of each segment, and that no three-valued segment occurs.
AxiomReport axiom_check(SeqKind kind, std::uint64_t n_max, const PrecisionConfig& cfg = {});

}  // namespace factpow
