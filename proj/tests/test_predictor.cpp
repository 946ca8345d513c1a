#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "factpow/errors.hpp"
#include "factpow/predictor.hpp"

using namespace factpow;

namespace {

// Rational enclosure of e from the factorial series; tail < 2/N!.
std::pair<mpq_class, mpq_class> e_bracket() {
  mpq_class sum = 0, term = 1;
  for (int k = 0; k < 60; ++k) {
    sum += term;
    term /= k + 1;
  }
  return {sum, sum + 2 * term};
}

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// floor(a e) from the rational bracket; nullopt if the bracket straddles.
std::optional<std::uint64_t> floor_ae(const mpq_class& a) {
  static const auto [lo, hi] = e_bracket();
  mpz_class f_lo = floor_q(a * lo), f_hi = floor_q(a * hi);
  if (f_lo != f_hi) return std::nullopt;
  return f_lo.get_ui();
}

// Least n >= 1 with p^n <= q^n n!, by direct comparison of fresh products.
std::uint64_t brute_na(const mpz_class& p, const mpz_class& q) {
  mpz_class lhs = 1, rhs = 1;
  for (std::uint64_t n = 1;; ++n) {
    lhs *= p;
    rhs *= q;
    rhs *= static_cast<unsigned long>(n);
    if (lhs <= rhs) return n;
  }
}

Rational rational(long p, long q) { return Rational{BigInt(p), BigInt(q)}; }

}  // namespace

TEST_CASE("locate_n examples") {
  CHECK(locate_n(Rational(2)) == 5);
  CHECK(locate_n(Rational(3)) == 8);
  CHECK(locate_n(Rational(1000)) == 2718);
}

TEST_CASE("property: locate_n equals floor(a e) from a series bracket of e") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(1001, 5'000'000);
  std::uniform_int_distribution<long> den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    long q = den(rng);
    long p = num(rng) % (5000 * q) + q + 1;
    Rational a = rational(p, q);
    auto want = floor_ae(a.value());
    if (!want) continue;
    CAPTURE(a.to_string());
    CHECK(locate_n(a) == *want);
  }
}

TEST_CASE("predict_na examples") {
  PredictionOutcome two = predict_na(Rational(2));
  CHECK(two.n == 5);
  CHECK(two.m == 3);
  CHECK(two.case_label == SegmentCase::TWO_ELL_EQ_NM1);
  CHECK(two.candidates == std::vector<std::uint64_t>{4});
  CHECK(two.exact == 4u);
  CHECK(two.agrees == true);

  PredictionOutcome three = predict_na(Rational(3));
  CHECK(three.n == 8);
  CHECK(three.m == 3);
  CHECK(three.case_label == SegmentCase::ONE_VALUE);
  CHECK(three.candidates == std::vector<std::uint64_t>{6, 7});
  CHECK(three.exact == 7u);
  CHECK(three.agrees == true);
}

TEST_CASE("a <= 3/e gives the single candidate 2") {
  for (Rational a : {rational(11, 10), rational(101, 100), rational(21, 20), rational(1103, 1000)}) {
    PredictionOutcome out = predict_na(a);
    CHECK(out.trivial());
    CHECK(out.m == 0);
    CHECK(out.candidates == std::vector<std::uint64_t>{2});
    CHECK(out.exact == 2u);
  }
  // 3/e = 1.10363..., so 1.1036 is trivial and 1.1037 is not.
  CHECK(predict_na(Rational::parse("1.1036")).trivial());
  PredictionOutcome just_above = predict_na(Rational::parse("1.1037"));
  CHECK_FALSE(just_above.trivial());
  CHECK(just_above.n == 3);
  CHECK_THROWS_AS(predict_na(Rational(1)), DomainError);
}

TEST_CASE("the n = 10^12 interval predicts n - 14 or n - 13 without the oracle") {
  const std::uint64_t n = 1'000'000'000'000ULL;
  PredictConfig cfg;
  cfg.with_oracle = false;
  auto samples = interval_samples(n, 2, cfg.precision);
  REQUIRE(samples.size() == 2);
  for (const Rational& a : samples) {
    PredictionOutcome out = predict_na(a, cfg);
    CHECK(out.n == n);
    CHECK(out.m == 15);
    CHECK(out.candidates == std::vector<std::uint64_t>{n - 14, n - 13});
    CHECK_FALSE(out.exact);
    CHECK_FALSE(out.agrees);
  }
}

TEST_CASE("oracle is skipped past the guard") {
  PredictConfig cfg;
  cfg.oracle_guard = 100;
  PredictionOutcome out = predict_na(Rational(1000), cfg);
  CHECK(out.n == 2718);
  CHECK_FALSE(out.exact);
}

TEST_CASE("interval_samples lie in (n/e, (n+1)/e]") {
  for (std::uint64_t n : {3ULL, 10ULL, 271ULL, 5000ULL}) {
    auto s = interval_samples(n, 4);
    REQUIRE(s.size() == 4);
    for (std::size_t i = 0; i < s.size(); ++i) {
      CAPTURE(n);
      CHECK(floor_ae(s[i].value()) == n);
      if (i > 0) CHECK(s[i - 1].value() < s[i].value());
    }
  }
}

TEST_CASE("verify_range examples") {
  RangeReport small = verify_range(3, 100, 2);
  CHECK(small.predictions == 196);
  CHECK(small.agreements == 196);
  CHECK(small.passed());

  RangeReport one = verify_range(3, 3, 1);
  CHECK(one.predictions == 1);
  CHECK(one.case_counts.at("ONE_VALUE") == 1);
  PredictionOutcome three = predict_na(interval_samples(3, 1)[0]);
  CHECK(three.segment_values == std::vector<std::int64_t>{2, 2, 2});
  CHECK(three.candidates == std::vector<std::uint64_t>{2, 3});

  RangeReport wide = verify_range(3, 2000, 2);
  CHECK(wide.predictions == 3996);
  CHECK(wide.passed());
  CHECK(wide.singleton_outside_nm1 == 0);
  CHECK(wide.case_counts.count("TWO_ELL_EQ_NM1") == 1);

  CHECK_THROWS_AS(verify_range(2, 10, 1), UsageError);
  CHECK_THROWS_AS(verify_range(10, 5, 1), UsageError);
}

TEST_CASE("verify_range is deterministic across thread counts") {
  RangeReport a = verify_range(3, 300, 3, {}, 1);
  RangeReport b = verify_range(3, 300, 3, {}, 5);
  CHECK(a.predictions == b.predictions);
  CHECK(a.case_counts == b.case_counts);
  CHECK(a.outcome_counts == b.outcome_counts);
}

TEST_CASE("property: the exact n_a is always a candidate and the set has the theorem's shape") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<long> den(1, 97);
  std::uniform_int_distribution<long> scale(101, 40'000);
  for (int i = 0; i < 1500; ++i) {
    long q = den(rng);
    long p = scale(rng) * q / 100 + 1;
    if (p <= q) continue;
    Rational a = rational(p, q);
    PredictionOutcome out = predict_na(a);
    std::uint64_t want = brute_na(a.num(), a.den());
    CAPTURE(a.to_string());
    CHECK(std::find(out.candidates.begin(), out.candidates.end(), want) != out.candidates.end());
    CHECK(out.exact == want);
    bool singleton = out.candidates.size() == 1;
    CHECK(singleton == (out.trivial() || out.case_label == SegmentCase::TWO_ELL_EQ_NM1));
    if (!out.trivial()) {
      std::uint64_t base = out.n - static_cast<std::uint64_t>(out.m);
      for (std::uint64_t c : out.candidates) CHECK((c >= base + 1 && c <= base + 3));
    }
  }
}

TEST_CASE("|n_a / a - e| shrinks along a = 10, 50, 100, 300") {
  double prev = INFINITY;
  for (long a : {10L, 50L, 100L, 300L}) {
    std::uint64_t na = brute_na(a, 1);
    CHECK(predict_na(Rational(a)).exact == na);
    double gap = std::abs(static_cast<double>(na) / a - std::exp(1.0));
    CAPTURE(a);
    CHECK(gap < prev);
    prev = gap;
  }
}
