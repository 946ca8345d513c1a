// Acceptance run: one PASS/FAIL line per criterion. Criteria known to be
// unattainable stay red but are listed in kExpectedFailures so that the exit
// status reflects only regressions (or an expected failure that starts passing).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "factpow/certify.hpp"
#include "factpow/cli.hpp"
#include "factpow/exact_core.hpp"
#include "factpow/predictor.hpp"
#include "factpow/sigma_analyzer.hpp"
#include "factpow/stirling_functions.hpp"

using namespace factpow;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

// a_s(n) > 1 for n = 2..6, and n_300 / 300 misses e by 0.0116.
const std::set<int> kExpectedFailures = {8, 10};

Interval dec(const char* text, Bits bits = 128) { return Interval::from_decimal(text, bits); }

bool inside(const Interval& x, const char* lo, const char* hi) {
  return certainly_less(dec(lo, x.bits()), x) && certainly_less(x, dec(hi, x.bits()));
}

void require_suite(Outcome& out, std::string_view suite) {
  for (const CheckResult& c : run_suite(suite)) out.require(c.passed, "[" + c.suite + "] " + c.name + ": " + c.detail);
}

Outcome criterion1() {
  Outcome out;
  auto start = Clock::now();
  OutputRecord rec = cmd_table(12);
  double t = seconds_since(start);
  out.require(rec.results["sigma"] == Json::array({3, 4, 5, 6, 7, 8, 9, 11, 12, 13, 14, 15}),
              "table " + rec.results["sigma"].dump());
  out.require(t < 10, "runtime " + std::to_string(t) + " s");
  return out;
}

Outcome criterion2() {
  Outcome out;
  struct Landmark {
    SeqKind kind;
    std::uint64_t n;
    std::int64_t sigma;
  };
  for (Landmark l : {Landmark{SeqKind::E_SEQ, 1, 2}, {SeqKind::E_SEQ, 2, 2}, {SeqKind::E_SEQ, 3, 2},
                     {SeqKind::E_SEQ, 4, 3}, {SeqKind::E_SEQ, 54, 3}, {SeqKind::E_SEQ, 55, 4},
                     {SeqKind::S_SEQ, 2, 1}, {SeqKind::S_SEQ, 5, 2}, {SeqKind::S_SEQ, 15, 3},
                     {SeqKind::S_SEQ, 16, 4}}) {
    std::int64_t got = sigma(l.kind, l.n).sigma;
    out.require(got == l.sigma, std::string(to_string(l.kind)) + " sigma_" + std::to_string(l.n) + " = " +
                                    std::to_string(got));
  }
  return out;
}

Outcome criterion3() {
  Outcome out;
  auto e = breakpoints(SeqKind::E_SEQ, 6);
  auto s = breakpoints(SeqKind::S_SEQ, 6);
  out.require(e[0] == 3 && e[1] == 54, "E_SEQ breakpoints");
  out.require(s[0] == 2 && s[1] == 5 && s[2] == 15, "S_SEQ breakpoints");
  for (std::size_t i = 0; i < 6; ++i) {
    out.require(breakpoint_growth_holds(SeqKind::E_SEQ, i + 1, e[i]), "E_SEQ growth at i = " + std::to_string(i + 1));
    out.require(breakpoint_growth_holds(SeqKind::S_SEQ, i + 1, s[i]), "S_SEQ growth at i = " + std::to_string(i + 1));
  }
  return out;
}

Outcome criterion4() {
  Outcome out;
  struct Spot {
    const char* a;
    std::uint64_t na;
  };
  for (Spot spot : {Spot{"2", 4}, {"3", 7}, {"10", 25}, {"11/10", 2}}) {
    Rational a = Rational::parse(spot.a);
    FactorialCache cache;
    auto start = Clock::now();
    std::uint64_t got = exact_na(a, cache);
    double t = seconds_since(start);
    out.require(got == spot.na, std::string("n_") + spot.a + " = " + std::to_string(got));
    out.require(t < 1e-3, std::string("n_") + spot.a + " took " + std::to_string(t * 1e3) + " ms");
  }
  return out;
}

Outcome criterion5() {
  Outcome out;
  auto start = Clock::now();
  RangeReport r = verify_range(3, 2000, 2);
  double t = seconds_since(start);
  out.require(r.passed(), std::to_string(r.failures.size()) + " disagreements");
  out.require(r.predictions == 3996, "predictions " + std::to_string(r.predictions));
  out.require(r.singleton_outside_nm1 == 0, "singletons outside TWO_ELL_EQ_NM1");
  // Every TWO_ELL_EQ_NM1 outcome is the single candidate n-m+2.
  for (const auto& [key, count] : r.outcome_counts) {
    if (key.rfind("TWO_ELL_EQ_NM1:", 0) == 0) out.require(key == "TWO_ELL_EQ_NM1:n-m+2", key);
  }
  out.require(t < 300, "runtime " + std::to_string(t) + " s");
  return out;
}

Outcome criterion6() {
  Outcome out;
  for (SeqKind kind : {SeqKind::S_SEQ, SeqKind::E_SEQ}) {
    auto scan = sigma_scan(kind, 2000);
    std::uint64_t more = 0;
    for (std::uint64_t n = 3; n <= 2000; ++n) {
      if (segment_from_scan(scan, n).value_count == ValueCount::More) ++more;
    }
    out.require(more == 0, std::string(to_string(kind)) + ": " + std::to_string(more) + " segments with 3+ values");
  }
  return out;
}

Outcome criterion7() {
  Outcome out;
  out.require(inside(eval(FunctionTag::R, Interval(1, 128)), "1.92648", "1.92649"), "R(1)");
  out.require(inside(eval(FunctionTag::R, Interval(10, 128)), "1.05978", "1.05979"), "R(10)");
  out.require(inside(eval(FunctionTag::R, Interval(100, 128)), "1.005748", "1.005749"), "R(100)");
  require_suite(out, "brackets");
  const std::uint64_t n = 1'000'000'000'000ULL;
  Interval t = eroot_factorial_bounds(n, 128);
  out.require(certainly_less(Interval::from_uint(n + 14, 128), t) &&
                  certainly_less(t, Interval::from_uint(n + 15, 128)),
              "e n!^(1/n) at 10^12");
  return out;
}

Outcome criterion8() {
  Outcome out;
  auto start = Clock::now();
  require_suite(out, "thm41");
  require_suite(out, "thm5");
  std::vector<std::uint64_t> above_one;
  for (std::uint64_t n = 2; n <= 10'000; ++n) {
    Interval a = eval(FunctionTag::a_s, Interval::from_uint(n, 128));
    out.require(certainly_less(dec("0.9114"), a), "a_s(" + std::to_string(n) + ") <= 0.9114");
    if (!certainly_less(a, Interval(1, 128))) above_one.push_back(n);
  }
  if (!above_one.empty()) {
    std::ostringstream list;
    for (std::uint64_t n : above_one) list << (n == above_one.front() ? "" : ", ") << n;
    out.require(false, "a_s(n) >= 1 at n = " + list.str());
  }
  double t = seconds_since(start);
  out.require(t < 120, "runtime " + std::to_string(t) + " s");
  return out;
}

// Random expression tree over one rational input, replayable from its seed.
Interval random_expression(std::uint64_t seed, const mpq_class& x0, Bits bits) {
  std::mt19937_64 rng(seed);
  Interval x = Interval::from_mpq(x0, bits), acc = x;
  std::uniform_int_distribution<int> op(0, 6);
  std::uniform_int_distribution<long> small(1, 9);
  for (int depth = 0; depth < 6; ++depth) {
    switch (op(rng)) {
      case 0: acc = acc + x; break;
      case 1: acc = acc - Interval(small(rng), bits); break;
      case 2: acc = acc * x; break;
      case 3: acc = acc / (sqr(x) + 1); break;
      case 4: acc = exp(acc / (1 + sqr(acc))); break;
      case 5: acc = log(1 + sqr(acc)); break;
      default: acc = sqrt(1 + sqr(acc)); break;
    }
  }
  return acc;
}

Outcome criterion9() {
  Outcome out;
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> num(1, 100'000);
  int disjoint = 0;
  for (int i = 0; i < 10'000; ++i) {
    mpq_class x(num(rng), 10'000);
    x.canonicalize();
    std::uint64_t seed = rng();
    Interval lo = random_expression(seed, x, 128), hi = random_expression(seed, x, 512);
    if (!(mpfr_lessequal_p(lo.lo(), hi.hi()) && mpfr_lessequal_p(hi.lo(), lo.hi()))) ++disjoint;
  }
  out.require(disjoint == 0, std::to_string(disjoint) + " disjoint enclosure pairs");

  const Interval h = dec("0.0001", 256);
  for (long x0 : {2L, 5L, 10L}) {
    Interval x(x0, 256);
    auto diff = [&](FunctionTag tag) { return (eval(tag, x + h) - eval(tag, x - h)) / (2 * h); };
    Interval rl = diff(FunctionTag::L) + eval(FunctionTag::ell, x) * eval(FunctionTag::L, x);
    Interval rr = diff(FunctionTag::R) + eval(FunctionTag::r, x) * eval(FunctionTag::R, x);
    Interval rt = diff(FunctionTag::T) - eval(FunctionTag::Tprime, x);
    for (const Interval& res : {rl, rr, rt}) {
      out.require(std::abs(res.mid_double()) < 1e-7, "finite difference at x = " + std::to_string(x0));
    }
  }

  int grid_failures = 0;
  for (int i = 1; i <= 100; ++i) {
    Interval a = 1 + Interval::from_mpq(mpq_class(i, 10), 128);  // a = 1.1 .. 11
    Interval ln_a = log(a);
    for (int j = 1; j <= 100; ++j) {
      Interval c = ln_a.upper_point() + Interval::from_mpq(mpq_class(j * j, 100), 128);
      Interval root = pow(a, 1 / c);
      if (!certainly_less((c + ln_a) / c, root) || !certainly_less(root, c / (c - ln_a))) ++grid_failures;
    }
  }
  out.require(grid_failures == 0, std::to_string(grid_failures) + " failures of the (c + ln a)/c < a^(1/c) < c/(c - ln a) grid");
  return out;
}

// |x - target| < tol, decided on enclosures.
bool within(const Interval& x, const Interval& target, const char* tol) {
  Interval gap = x - target;
  return certainly_less(-dec(tol), gap) && certainly_less(gap, dec(tol));
}

Outcome criterion10() {
  Outcome out;
  Interval e = const_interval("e", 128);
  Interval a_s = a_S_at(10'000, 128);
  out.require(within(a_s, dec("0.5"), "0.01"), "|a_S(10^4) - 0.5| = " + std::to_string(std::abs(a_s.mid_double() - 0.5)));

  std::uint64_t n300 = exact_na(Rational(300));
  Interval ratio = Interval::from_mpq(mpq_class(n300, 300), 128);
  out.require(within(ratio, e, "0.01"), "n_300 = " + std::to_string(n300) + ", |n_300/300 - e| = " +
                                            std::to_string(std::abs(ratio.mid_double() - e.mid_double())));

  // n / n!^(1/n) = n e / (e n!^(1/n)).
  const std::uint64_t n = 10'000;
  Interval q = Interval::from_uint(n, 128) * e / eroot_factorial_bounds(n, 128);
  out.require(within(q, e, "0.01"), "n/(n!)^(1/n) at 10^4");
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "sigma table for 10^1..10^12 under 10 s", criterion1},
      {2, "sigma landmarks for both sequences", criterion2},
      {3, "breakpoints and growth bounds", criterion3},
      {4, "exact n_a spot values under 1 ms", criterion4},
      {5, "theorem soundness sweep 3..2000", criterion5},
      {6, "segment value counts 3..2000", criterion6},
      {7, "bracket certifications", criterion7},
      {8, "monotone sequence suites", criterion8},
      {9, "property suites", criterion9},
      {10, "trend checks", criterion10},
  };
  int unexpected = 0;
  for (const Criterion& c : criteria) {
    auto start = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    double t = seconds_since(start);
    bool expected_fail = kExpectedFailures.count(c.id) > 0;
    std::string note;
    if (!out.passed && expected_fail) note = " [expected failure]";
    if (out.passed && expected_fail) note = " [unexpected pass]";
    if (out.passed == expected_fail) ++unexpected;
    std::printf("%s %d %s (%.2f s)%s%s%s\n", out.passed ? "PASS" : "FAIL", c.id, c.name, t, note.c_str(),
                out.detail.empty() ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
  }
  return unexpected == 0 ? 0 : 1;
}
