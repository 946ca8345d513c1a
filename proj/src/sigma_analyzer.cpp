#include "factpow/sigma_analyzer.hpp"

#include <algorithm>
#include <cctype>

#include "factpow/errors.hpp"
#include "factpow/stirling_functions.hpp"

namespace factpow {

namespace {

std::string describe(SeqKind kind, std::uint64_t n) {
  return "sigma(" + std::string(to_string(kind)) + ", " + std::to_string(n) + ")";
}

std::optional<std::int64_t> sigma_from_enclosure(const Interval& t, std::uint64_t n) {
  auto fl = t.common_floor();
  if (!fl) return std::nullopt;
  mpz_class s = *fl - mpz_class(std::to_string(n)) + 1;
  return static_cast<std::int64_t>(s.get_si());
}

// k <= T < k + 1 certified by the enclosure.
bool placed(const Interval& t, const mpz_class& k) {
  mpz_class k1 = k + 1;
  return mpfr_cmp_z(t.lo(), k.get_mpz_t()) >= 0 && mpfr_cmp_z(t.hi(), k1.get_mpz_t()) < 0;
}

void classify(SegmentReport& report) {
  const auto& terms = report.terms;
  std::vector<std::uint64_t> switches;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
    std::int64_t step = terms[i + 1].sigma - terms[i].sigma;
    if (step != 0 && step != 1) {
      throw FalsificationError("sigma step of " + std::to_string(step) + " between n = " +
                               std::to_string(terms[i].n) + " and n + 1");
    }
    if (step == 1) switches.push_back(terms[i].n);
  }
  report.ell.reset();
  report.case_label.reset();
  if (switches.empty()) {
    report.value_count = ValueCount::One;
    report.case_label = SegmentCase::ONE_VALUE;
  } else if (switches.size() == 1) {
    report.value_count = ValueCount::Two;
    report.ell = switches.front();
    std::uint64_t offset = *report.ell - report.first_index();
    switch (offset) {
      case 0: report.case_label = SegmentCase::TWO_ELL_EQ_NM; break;
      case 1: report.case_label = SegmentCase::TWO_ELL_EQ_NM1; break;
      case 2: report.case_label = SegmentCase::TWO_ELL_EQ_NM2; break;
      default: report.case_label = SegmentCase::TWO_ELL_GE_NM3; break;
    }
  } else {
    report.value_count = ValueCount::More;
  }
}

void require_segment_shape(std::uint64_t n, std::int64_t m) {
  if (m < 2 || static_cast<std::uint64_t>(m) >= n) {
    throw FalsificationError("segment at n = " + std::to_string(n) + " has m = sigma_n = " +
                             std::to_string(m) + " outside 2 <= m < n");
  }
}

}  // namespace

std::string_view to_string(SeqKind kind) { return kind == SeqKind::S_SEQ ? "S_SEQ" : "E_SEQ"; }

SeqKind seq_kind_from_string(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (lower == "s_seq" || lower == "s") return SeqKind::S_SEQ;
  if (lower == "e_seq" || lower == "e") return SeqKind::E_SEQ;
  throw UsageError("unknown sequence '" + std::string(name) + "' (expected S_SEQ or E_SEQ)");
}

mpq_class increment_constant(SeqKind kind) {
  return kind == SeqKind::S_SEQ ? mpq_class(1) : mpq_class(3, 2);
}

Interval t_term(SeqKind kind, std::uint64_t n, Bits bits) {
  if (n == 0) throw DomainError("T_n is defined for n >= 1");
  if (kind == SeqKind::S_SEQ) return eval(FunctionTag::T, Interval::from_uint(n, bits));
  return eroot_factorial_bounds(n, bits);
}

SigmaRecord sigma(SeqKind kind, std::uint64_t n, const PrecisionConfig& cfg) {
  try {
    auto resolved = escalate(cfg, describe(kind, n), [&](Bits bits) -> Attempt<SigmaRecord> {
      Interval t = t_term(kind, n, bits);
      auto s = sigma_from_enclosure(t, n);
      if (!s) return {std::nullopt, std::move(t)};
      return {SigmaRecord{n, *s, t, bits}, t};
    });
    return std::move(resolved.value);
  } catch (const Unresolved& e) {
    mpz_class boundary;
    mpfr_get_z(boundary.get_mpz_t(), e.witness().hi(), MPFR_RNDD);
    throw Unresolved(describe(kind, n) + ": T_n straddles the integer " + boundary.get_str(),
                     e.witness());
  }
}

std::vector<SigmaRecord> sigma_scan(SeqKind kind, std::uint64_t n_max, const PrecisionConfig& cfg) {
  std::vector<SigmaRecord> out;
  out.reserve(n_max);
  for (std::uint64_t n = 1; n <= n_max; ++n) out.push_back(sigma(kind, n, cfg));
  return out;
}

std::string_view to_string(ValueCount count) {
  switch (count) {
    case ValueCount::One: return "one";
    case ValueCount::Two: return "two";
    case ValueCount::More: return "more";
  }
  return "?";
}

std::string_view to_string(SegmentCase c) {
  switch (c) {
    case SegmentCase::ONE_VALUE: return "ONE_VALUE";
    case SegmentCase::TWO_ELL_EQ_NM: return "TWO_ELL_EQ_NM";
    case SegmentCase::TWO_ELL_EQ_NM1: return "TWO_ELL_EQ_NM1";
    case SegmentCase::TWO_ELL_EQ_NM2: return "TWO_ELL_EQ_NM2";
    case SegmentCase::TWO_ELL_GE_NM3: return "TWO_ELL_GE_NM3";
  }
  return "?";
}

std::vector<std::int64_t> SegmentReport::values() const {
  std::vector<std::int64_t> out;
  out.reserve(terms.size());
  for (const auto& t : terms) out.push_back(t.sigma);
  return out;
}

SegmentReport segment(SeqKind kind, std::uint64_t n, const PrecisionConfig& cfg) {
  if (n < 3) throw UsageError("segment requires n >= 3, got " + std::to_string(n));
  SigmaRecord top = sigma(kind, n, cfg);
  require_segment_shape(n, top.sigma);

  SegmentReport report;
  report.n = n;
  report.m = top.sigma;
  const std::uint64_t first = report.first_index();

  // One precision for every term of the window.
  auto resolved = escalate(cfg, "segment at " + describe(kind, n),
                           [&](Bits bits) -> Attempt<std::vector<SigmaRecord>> {
                             std::vector<SigmaRecord> terms;
                             for (std::uint64_t i = first; i <= n; ++i) {
                               Interval t = t_term(kind, i, bits);
                               auto s = sigma_from_enclosure(t, i);
                               if (!s) return {std::nullopt, std::move(t)};
                               terms.push_back(SigmaRecord{i, *s, std::move(t), bits});
                             }
                             return {std::move(terms), Interval(bits)};
                           });
  report.terms = std::move(resolved.value);
  report.bits = resolved.bits;
  classify(report);
  return report;
}

SegmentReport segment_from_scan(const std::vector<SigmaRecord>& scan, std::uint64_t n) {
  if (n < 3) throw UsageError("segment requires n >= 3, got " + std::to_string(n));
  if (n > scan.size()) throw UsageError("segment at n = " + std::to_string(n) + " lies beyond the scan");
  SegmentReport report;
  report.n = n;
  report.m = scan[n - 1].sigma;
  require_segment_shape(n, report.m);
  for (std::uint64_t i = report.first_index(); i <= n; ++i) {
    report.terms.push_back(scan[i - 1]);
    report.bits = std::max(report.bits, scan[i - 1].bits);
  }
  classify(report);
  return report;
}

std::optional<std::string> check_segment_placements(const SegmentReport& report) {
  if (!report.case_label) return "segment has more than two values";
  const std::uint64_t base = report.first_index();
  const mpz_class n(std::to_string(report.n));

  auto term = [&](std::uint64_t offset) -> const Interval& { return report.terms.at(offset).t_enclosure; };
  std::optional<std::string> failure;
  auto expect = [&](std::uint64_t offset, const mpz_class& k) {
    if (failure) return;
    if (!placed(term(offset), k)) {
      failure = "T_" + std::to_string(base + offset) + " = " + term(offset).to_string() + " not in [" +
                k.get_str() + ", " + mpz_class(k + 1).get_str() + ")";
    }
  };

  switch (*report.case_label) {
    case SegmentCase::ONE_VALUE:
      expect(0, n - 1);
      expect(1, n);
      expect(2, n + 1);
      break;
    case SegmentCase::TWO_ELL_EQ_NM:
      expect(0, n - 2);
      expect(1, n);
      expect(2, n + 1);
      break;
    case SegmentCase::TWO_ELL_EQ_NM1:
      expect(0, n - 2);
      expect(1, n - 1);
      expect(2, n + 1);
      break;
    case SegmentCase::TWO_ELL_EQ_NM2:
      expect(0, n - 2);
      expect(1, n - 1);
      expect(2, n);
      expect(3, n + 2);
      break;
    case SegmentCase::TWO_ELL_GE_NM3:
      expect(0, n - 2);
      expect(1, n - 1);
      expect(2, n);
      expect(3, n + 1);
      break;
  }
  return failure;
}

std::vector<std::uint64_t> breakpoints(SeqKind kind, std::size_t count, const BreakpointConfig& cfg) {
  std::vector<std::uint64_t> found;
  std::uint64_t evaluations = 0;
  auto sigma_at = [&](std::uint64_t u) {
    if (++evaluations > cfg.budget) {
      std::string progress;
      for (auto b : found) progress += (progress.empty() ? "" : ", ") + std::to_string(b);
      throw ResourceError("breakpoint scan budget of " + std::to_string(cfg.budget) +
                          " sigma evaluations exhausted; found [" + progress + "]");
    }
    return sigma(kind, u, cfg.precision).sigma;
  };

  const mpq_class a = increment_constant(kind);
  const std::int64_t sigma_1 = sigma_at(1);
  for (std::size_t i = 1; i <= count; ++i) {
    const std::int64_t level = sigma_1 + static_cast<std::int64_t>(i) - 1;
    std::uint64_t lo = 1;
    if (!found.empty()) {
      // After the step at the previous breakpoint p, the level persists for at
      // least r terms, where r is the least positive integer with r + 1 > p/a.
      const std::uint64_t prev = found.back();
      mpz_class r_min;
      mpq_class ratio = mpq_class(mpz_class(std::to_string(prev))) / a;
      mpz_fdiv_q(r_min.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
      std::uint64_t jump = std::max<std::uint64_t>(1, r_min.get_ui());
      lo = prev + jump;
      std::int64_t s = sigma_at(lo);
      if (s != level) {
        throw FalsificationError("level " + std::to_string(level) + " ended before n = " +
                                 std::to_string(lo) + " (sigma = " + std::to_string(s) + ")");
      }
    }
    std::uint64_t step = std::max<std::uint64_t>(1, lo);
    std::uint64_t hi = lo + step;
    while (sigma_at(hi) <= level) {
      lo = hi;
      step *= 2;
      hi = lo + step;
    }
    while (hi - lo > 1) {
      std::uint64_t mid = lo + (hi - lo) / 2;
      if (sigma_at(mid) <= level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    found.push_back(lo);
  }
  return found;
}

bool breakpoint_growth_holds(SeqKind kind, std::size_t i, std::uint64_t n_i) {
  if (i == 0) throw UsageError("breakpoints are indexed from 1");
  mpz_class n(std::to_string(n_i));
  if (kind == SeqKind::S_SEQ) {
    mpz_class bound;
    mpz_ui_pow_ui(bound.get_mpz_t(), 2, i);
    return n >= bound;
  }
  // 3^(i-1) n_i >= 2 * 5^(i-1) + 3^(i-1)
  mpz_class p3;
  mpz_class p5;
  mpz_ui_pow_ui(p3.get_mpz_t(), 3, i - 1);
  mpz_ui_pow_ui(p5.get_mpz_t(), 5, i - 1);
  return p3 * n >= 2 * p5 + p3;
}

bool AxiomReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

namespace {
AxiomCheck named_check(std::string name) {
  AxiomCheck c;
  c.name = std::move(name);
  return c;
}
}  // namespace

AxiomReport axiom_check(SeqKind kind, std::uint64_t n_max, const PrecisionConfig& cfg) {
  if (n_max < 2) throw UsageError("axiom_check requires n_max >= 2");
  AxiomReport report;
  report.kind = kind;
  report.n_max = n_max;

  const std::vector<SigmaRecord> scan = sigma_scan(kind, n_max + 1, cfg);
  auto T = [&](std::uint64_t n) -> const Interval& { return scan[n - 1].t_enclosure; };
  auto sig = [&](std::uint64_t n) { return scan[n - 1].sigma; };

  AxiomCheck s1 = named_check("increment_between_1_and_2");
  AxiomCheck s2 = named_check("increment_below_1_plus_a_over_n");
  AxiomCheck bounds = named_check("n_le_T_n_lt_T_1_plus_2(n-1)");
  AxiomCheck steps = named_check("sigma_unit_steps");
  AxiomCheck nu = named_check("nu_recursion");
  AxiomCheck small = named_check(kind == SeqKind::S_SEQ ? "sigma_1_eq_1_and_sigma_n_lt_n" : "2_le_sigma_n_lt_n");
  AxiomCheck counts = named_check("segments_have_one_or_two_values");
  AxiomCheck placements = named_check("segment_T_placements");

  auto fail = [](AxiomCheck& c, const std::string& msg) {
    if (c.passed) c.first_failure = msg;
    c.passed = false;
  };

  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const Bits bits = std::max(T(n).bits(), T(n + 1).bits());
    Interval d = T(n + 1) - T(n);
    ++s1.checked;
    if (!certainly_less_equal(Interval(1, bits), d) || !certainly_less(d, Interval(2, bits))) {
      fail(s1, "n = " + std::to_string(n) + ": increment " + d.to_string());
    }
    ++s2.checked;
    Interval cap = 1 + Interval::from_mpq(increment_constant(kind), bits) / Interval::from_uint(n, bits);
    if (!certainly_less(d, cap)) fail(s2, "n = " + std::to_string(n) + ": increment " + d.to_string());

    ++bounds.checked;
    Interval nn = Interval::from_uint(n, bits);
    bool ok = certainly_less_equal(nn, T(n));
    if (n > 1) ok = ok && certainly_less(T(n), T(1) + 2 * (nn - 1));
    if (!ok) fail(bounds, "n = " + std::to_string(n) + ": T_n " + T(n).to_string());

    ++steps.checked;
    std::int64_t step = sig(n + 1) - sig(n);
    if (step != 0 && step != 1) fail(steps, "n = " + std::to_string(n) + ": step " + std::to_string(step));

    ++nu.checked;
    const auto& rec = scan[n - 1];
    bool nu_ok = scan[n].nu() == rec.nu() + 1 + static_cast<std::uint64_t>(step);
    Interval nu_iv = Interval::from_uint(rec.nu(), bits);
    nu_ok = nu_ok && certainly_less_equal(nu_iv - 1, T(n)) && certainly_less(T(n), nu_iv);
    for (std::uint64_t l = 0; nu_ok && l <= 8 && n + l <= n_max; ++l) {
      nu_ok = scan[n + l - 1].nu() ==
              rec.nu() + l + static_cast<std::uint64_t>(sig(n + l) - sig(n));
    }
    if (!nu_ok) fail(nu, "n = " + std::to_string(n));

    ++small.checked;
    bool small_ok = true;
    if (kind == SeqKind::S_SEQ) {
      small_ok = n == 1 ? sig(1) == 1 : sig(n) < static_cast<std::int64_t>(n);
    } else if (n >= 3) {
      small_ok = sig(n) >= 2 && sig(n) < static_cast<std::int64_t>(n);
    } else {
      small_ok = sig(n) == 2;
    }
    if (!small_ok) fail(small, "n = " + std::to_string(n) + ": sigma " + std::to_string(sig(n)));

    if (n >= 3) {
      ++counts.checked;
      ++placements.checked;
      SegmentReport seg = segment_from_scan(scan, n);
      switch (seg.value_count) {
        case ValueCount::One: ++report.one_value_segments; break;
        case ValueCount::Two: ++report.two_value_segments; break;
        case ValueCount::More:
          ++report.more_value_segments;
          fail(counts, "n = " + std::to_string(n) + " has a segment with more than two values");
          break;
      }
      if (auto why = check_segment_placements(seg)) fail(placements, "n = " + std::to_string(n) + ": " + *why);
    }
  }

  report.checks = {s1, s2, bounds, steps, nu, small, counts, placements};
  return report;
}

}  // namespace factpow
