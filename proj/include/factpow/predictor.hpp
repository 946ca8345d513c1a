#pragma once

// Predicts n_a = min{n : a^n <= n!} from the sigma segment of T_n = e n!^(1/n)
// at the unique n with n/e < a <= (n+1)/e, and checks the prediction against
// the exact oracle.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "factpow/exact_core.hpp"
#include "factpow/mpinterval.hpp"
#include "factpow/sigma_analyzer.hpp"

namespace factpow {

struct PredictionOutcome {
  Rational a{2};
  std::uint64_t n = 0;
  /// sigma_n; 0 on the a < 3/e branch where no segment is read.
  std::int64_t m = 0;
  /// Absent on the a < 3/e branch.
  std::optional<SegmentCase> case_label;
  std::vector<std::int64_t> segment_values;
  std::optional<std::uint64_t> ell;
  /// Ascending, one or two entries.
  std::vector<std::uint64_t> candidates;
  std::optional<std::uint64_t> exact;
  std::optional<bool> agrees;
  Bits bits = 0;

  bool trivial() const { return !case_label.has_value(); }
};

/// The unique n with n/e < a <= (n+1)/e, i.e. floor(a e). Terminates for every
/// rational a because a e is irrational.
std::uint64_t locate_n(const Rational& a, const PrecisionConfig& cfg = {});

struct PredictConfig {
  PrecisionConfig precision;
  bool with_oracle = true;
  /// Largest index the oracle may reach; candidates beyond it skip the oracle.
  std::uint64_t oracle_guard = FactorialCache::kDefaultGuard;
};

/// Candidate set for n_a. Throws DomainError unless a > 1 and
/// FalsificationError if the segment has more than two values.
PredictionOutcome predict_na(const Rational& a, const PredictConfig& cfg = {});

/// Sample points inside (n/e, (n+1)/e]: rationals with denominator `den`, the
/// first just above n/e, the last at or below (n+1)/e, any others evenly spaced
/// between. Membership is certified by interval comparison.
std::vector<Rational> interval_samples(std::uint64_t n, std::size_t count,
                                       const PrecisionConfig& cfg = {},
                                       std::uint64_t den = 1'000'000);

struct RangeFailure {
  Rational a{2};
  std::uint64_t n = 0;
  std::vector<std::uint64_t> candidates;
  std::optional<std::uint64_t> exact;
  std::string reason;
};

struct RangeReport {
  std::uint64_t n_lo = 0;
  std::uint64_t n_hi = 0;
  std::size_t samples_per_interval = 0;
  std::uint64_t predictions = 0;
  std::uint64_t agreements = 0;
  std::map<std::string, std::uint64_t> case_counts;
  /// Which candidate was the exact value, keyed "<case>:<offset from n-m>".
  std::map<std::string, std::uint64_t> outcome_counts;
  /// Singleton candidate sets seen outside TWO_ELL_EQ_NM1.
  std::uint64_t singleton_outside_nm1 = 0;
  std::vector<RangeFailure> failures;

  bool passed() const { return failures.empty() && agreements == predictions; }
};

/// Runs predict_na with the oracle on sample points for each n in [n_lo, n_hi]
/// and records every disagreement with its witness a. Work is spread across
/// threads; the report is assembled in n order.
RangeReport verify_range(std::uint64_t n_lo, std::uint64_t n_hi, std::size_t samples_per_interval,
                         const PredictConfig& cfg = {}, unsigned threads = 0);

}  // namespace factpow
