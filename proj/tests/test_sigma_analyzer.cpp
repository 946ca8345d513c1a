#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "factpow/errors.hpp"
#include "factpow/sigma_analyzer.hpp"

using namespace factpow;

namespace {

// T_n in long double, straight from the definitions.
long double t_oracle(SeqKind kind, std::uint64_t n) {
  long double x = static_cast<long double>(n);
  if (kind == SeqKind::S_SEQ) return x * std::pow(x, 1.0L / x);
  return std::exp(1.0L + std::lgamma(x + 1.0L) / x);
}

// sigma from the long double oracle, or nullopt when T_n is too close to an
// integer for long double to decide.
std::optional<std::int64_t> sigma_oracle(SeqKind kind, std::uint64_t n) {
  long double t = t_oracle(kind, n);
  long double f = std::floor(t);
  if (t - f < 1e-9L * t || f + 1 - t < 1e-9L * t) return std::nullopt;
  return static_cast<std::int64_t>(f) - static_cast<std::int64_t>(n) + 1;
}

bool defining_condition(const SigmaRecord& r) {
  auto lo = Interval::from_uint(r.n + r.sigma - 1, r.bits);
  auto hi = Interval::from_uint(r.n + r.sigma, r.bits);
  return certainly_less_equal(lo, r.t_enclosure) && certainly_less(r.t_enclosure, hi);
}

}  // namespace

TEST_CASE("sigma examples") {
  CHECK(sigma(SeqKind::E_SEQ, 1).sigma == 2);
  CHECK(sigma(SeqKind::E_SEQ, 2).sigma == 2);
  CHECK(sigma(SeqKind::E_SEQ, 3).sigma == 2);
  CHECK(sigma(SeqKind::E_SEQ, 4).sigma == 3);
  CHECK(sigma(SeqKind::E_SEQ, 54).sigma == 3);
  CHECK(sigma(SeqKind::E_SEQ, 55).sigma == 4);
  CHECK(sigma(SeqKind::S_SEQ, 1).sigma == 1);
  CHECK(sigma(SeqKind::S_SEQ, 6).sigma == 3);
  CHECK(sigma(SeqKind::S_SEQ, 15).sigma == 3);
  CHECK(sigma(SeqKind::S_SEQ, 16).sigma == 4);
  SigmaRecord big = sigma(SeqKind::E_SEQ, 1'000'000'000'000ULL);
  CHECK(big.sigma == 15);
  CHECK(big.nu() == 1'000'000'000'015ULL);
  CHECK(defining_condition(big));
}

TEST_CASE("sigma at powers of ten") {
  const std::int64_t expected[] = {3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15};
  std::uint64_t n = 1;
  for (std::int64_t want : expected) {
    n *= 10;
    CAPTURE(n);
    CHECK(sigma(SeqKind::E_SEQ, n).sigma == want);
  }
}

TEST_CASE("sigma agrees with a long double oracle for n <= 5000") {
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    auto scan = sigma_scan(kind, 5000);
    REQUIRE(scan.size() == 5000);
    int compared = 0;
    for (std::uint64_t n = 1; n <= 5000; ++n) {
      const SigmaRecord& r = scan[n - 1];
      CHECK(r.n == n);
      if (!defining_condition(r)) {
        CAPTURE(n);
        CHECK(defining_condition(r));
      }
      if (auto want = sigma_oracle(kind, n)) {
        ++compared;
        if (r.sigma != *want) {
          CAPTURE(n);
          CHECK(r.sigma == *want);
        }
      }
    }
    CHECK(compared >= 4990);
  }
}

TEST_CASE("sigma_n is below n from n = 3 on and sigma_1 = 1 for S_SEQ") {
  CHECK(sigma(SeqKind::S_SEQ, 1).sigma == 1);
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    auto scan = sigma_scan(kind, 500);
    for (std::uint64_t n = 3; n <= 500; ++n) {
      CHECK(scan[n - 1].sigma >= 2);
      CHECK(scan[n - 1].sigma < static_cast<std::int64_t>(n));
    }
  }
}

TEST_CASE("segment examples") {
  SegmentReport e5 = segment(SeqKind::E_SEQ, 5);
  CHECK(e5.m == 3);
  CHECK(e5.values() == std::vector<std::int64_t>{2, 2, 3, 3});
  CHECK(e5.value_count == ValueCount::Two);
  CHECK(e5.ell == 3u);
  CHECK(e5.case_label == SegmentCase::TWO_ELL_EQ_NM1);

  SegmentReport e8 = segment(SeqKind::E_SEQ, 8);
  CHECK(e8.values() == std::vector<std::int64_t>{3, 3, 3, 3});
  CHECK(e8.value_count == ValueCount::One);
  CHECK_FALSE(e8.ell);
  CHECK(e8.case_label == SegmentCase::ONE_VALUE);

  SegmentReport s4 = segment(SeqKind::S_SEQ, 4);
  CHECK(s4.m == 2);
  CHECK(s4.values() == std::vector<std::int64_t>{1, 2, 2});
  CHECK(s4.ell == 2u);
  CHECK(s4.case_label == SegmentCase::TWO_ELL_EQ_NM);

  CHECK_THROWS_AS(segment(SeqKind::E_SEQ, 2), UsageError);
}

TEST_CASE("every segment for 3 <= n <= 2000 has one or two values and the implied placements") {
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    auto scan = sigma_scan(kind, 2000);
    for (std::uint64_t n = 3; n <= 2000; ++n) {
      SegmentReport r = segment_from_scan(scan, n);
      bool ok = r.value_count != ValueCount::More && r.case_label.has_value();
      auto placement = check_segment_placements(r);
      if (!ok || placement) {
        CAPTURE(to_string(kind));
        CAPTURE(n);
        CHECK(ok);
        CHECK_FALSE(placement);
      }
      // Values are nondecreasing with unit steps and a unique switch index.
      auto v = r.values();
      int steps = 0;
      for (std::size_t i = 1; i < v.size(); ++i) {
        CHECK((v[i] == v[i - 1] || v[i] == v[i - 1] + 1));
        steps += v[i] != v[i - 1];
      }
      CHECK(steps == (r.value_count == ValueCount::Two ? 1 : 0));
    }
  }
}

TEST_CASE("segment_from_scan matches segment") {
  auto scan = sigma_scan(SeqKind::E_SEQ, 300);
  for (std::uint64_t n : {3u, 4u, 5u, 54u, 55u, 56u, 57u, 58u, 299u, 300u}) {
    SegmentReport a = segment(SeqKind::E_SEQ, n), b = segment_from_scan(scan, n);
    CAPTURE(n);
    CHECK(a.values() == b.values());
    CHECK(a.ell == b.ell);
    CHECK(a.case_label == b.case_label);
  }
}

TEST_CASE("breakpoint examples") {
  CHECK(breakpoints(SeqKind::S_SEQ, 3) == std::vector<std::uint64_t>{2, 5, 15});
  CHECK(breakpoints(SeqKind::E_SEQ, 2) == std::vector<std::uint64_t>{3, 54});
  auto s = breakpoints(SeqKind::S_SEQ, 6);
  CHECK(s[3] >= 16);
  CHECK(s == std::vector<std::uint64_t>{2, 5, 15, 46, 135, 385});
  CHECK(breakpoints(SeqKind::E_SEQ, 5) == std::vector<std::uint64_t>{3, 54, 458, 3480, 25867});
}

TEST_CASE("breakpoints match the last index of each level in a direct scan") {
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    auto scan = sigma_scan(kind, 4000);
    std::vector<std::uint64_t> direct;
    for (std::uint64_t n = 1; n < scan.size(); ++n) {
      if (scan[n].sigma != scan[n - 1].sigma) direct.push_back(n);
    }
    auto got = breakpoints(kind, direct.size());
    CAPTURE(to_string(kind));
    CHECK(got == direct);
  }
}

TEST_CASE("breakpoint growth bounds hold for computed entries") {
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    auto b = breakpoints(kind, 7);
    for (std::size_t i = 0; i < b.size(); ++i) {
      CAPTURE(i + 1);
      CHECK(breakpoint_growth_holds(kind, i + 1, b[i]));
      if (i > 0) CHECK(b[i] > b[i - 1]);
    }
  }
  CHECK_FALSE(breakpoint_growth_holds(SeqKind::S_SEQ, 4, 15));
  CHECK(breakpoint_growth_holds(SeqKind::S_SEQ, 4, 16));
}

TEST_CASE("breakpoint scan respects its budget") {
  BreakpointConfig tight;
  tight.budget = 5;
  CHECK_THROWS_AS(breakpoints(SeqKind::E_SEQ, 6, tight), ResourceError);
}

TEST_CASE("axiom_check passes for both sequences up to 1000") {
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    AxiomReport r = axiom_check(kind, 1000);
    CAPTURE(to_string(kind));
    for (const AxiomCheck& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.first_failure);
      CHECK(c.passed);
      CHECK(c.checked > 0);
    }
    CHECK(r.passed());
    CHECK(r.more_value_segments == 0);
    CHECK(r.one_value_segments + r.two_value_segments == 998);
  }
  CHECK_THROWS_AS(axiom_check(SeqKind::E_SEQ, 1), UsageError);
}

TEST_CASE("increment constants and kind names") {
  CHECK(increment_constant(SeqKind::S_SEQ) == 1);
  CHECK(increment_constant(SeqKind::E_SEQ) == mpq_class(3, 2));
  CHECK(seq_kind_from_string("e") == SeqKind::E_SEQ);
  CHECK(seq_kind_from_string("S_SEQ") == SeqKind::S_SEQ);
  CHECK(seq_kind_from_string("s_seq") == SeqKind::S_SEQ);
  CHECK_THROWS_AS(seq_kind_from_string("x"), UsageError);
}

TEST_CASE("concurrent sigma evaluations agree with sequential ones") {
  const std::uint64_t n_max = 800;
  auto reference = sigma_scan(SeqKind::E_SEQ, n_max);
  std::vector<std::int64_t> got(n_max + 1, -1);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::uint64_t n = 1 + t; n <= n_max; n += 4) got[n] = sigma(SeqKind::E_SEQ, n).sigma;
    });
  }
  for (auto& th : pool) th.join();
  for (std::uint64_t n = 1; n <= n_max; ++n) CHECK(got[n] == reference[n - 1].sigma);
}

TEST_CASE("t_term rejects n = 0") { CHECK_THROWS_AS(t_term(SeqKind::S_SEQ, 0, 128), DomainError); }
