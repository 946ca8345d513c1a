#include "factpow/predictor.hpp"

#include <algorithm>
#include <thread>

#include "factpow/errors.hpp"

namespace factpow {

namespace {

// floor(k / e) for an integer k >= 1, by escalation; k/e is irrational.
mpz_class floor_over_e(const mpz_class& k, const PrecisionConfig& cfg) {
  return escalate(cfg, "floor(" + k.get_str() + "/e)", [&](Bits bits) -> Attempt<mpz_class> {
           Interval v = Interval::from_mpz(k, bits) / const_interval("e", bits);
           auto fl = v.common_floor();
           if (!fl) return {std::nullopt, std::move(v)};
           return {*fl, std::move(v)};
         })
      .value;
}

std::vector<std::uint64_t> candidates_for(SegmentCase c, std::uint64_t n, std::int64_t m) {
  const std::uint64_t base = n - static_cast<std::uint64_t>(m);
  switch (c) {
    case SegmentCase::ONE_VALUE:
    case SegmentCase::TWO_ELL_EQ_NM:
      return {base + 1, base + 2};
    case SegmentCase::TWO_ELL_EQ_NM1:
      return {base + 2};
    case SegmentCase::TWO_ELL_EQ_NM2:
    case SegmentCase::TWO_ELL_GE_NM3:
      return {base + 2, base + 3};
  }
  return {};
}

struct SlotResult {
  std::vector<PredictionOutcome> outcomes;
  std::vector<RangeFailure> failures;
};

SlotResult verify_one(std::uint64_t n, std::size_t samples, const PredictConfig& cfg) {
  SlotResult slot;
  for (const Rational& a : interval_samples(n, samples, cfg.precision)) {
    try {
      PredictionOutcome out = predict_na(a, cfg);
      if (out.n != n) {
        slot.failures.push_back({a, n, out.candidates, out.exact, "locate_n returned " + std::to_string(out.n)});
      } else if (!out.exact) {
        slot.failures.push_back({a, n, out.candidates, std::nullopt, "oracle unavailable"});
      } else if (!out.agrees.value_or(false)) {
        slot.failures.push_back({a, n, out.candidates, out.exact, "exact n_a outside candidates"});
      }
      slot.outcomes.push_back(std::move(out));
    } catch (const std::exception& e) {
      slot.failures.push_back({a, n, {}, std::nullopt, e.what()});
    }
  }
  return slot;
}

}  // namespace

std::uint64_t locate_n(const Rational& a, const PrecisionConfig& cfg) {
  mpz_class n = escalate(cfg, "floor(a e) for a = " + a.to_string(), [&](Bits bits) -> Attempt<mpz_class> {
                  Interval ae = Interval::from_mpq(a.value(), bits) * const_interval("e", bits);
                  auto fl = ae.common_floor();
                  if (!fl) return {std::nullopt, std::move(ae)};
                  return {*fl, std::move(ae)};
                }).value;
  if (!n.fits_ulong_p()) throw RangeError("a e exceeds the supported index range");
  return n.get_ui();
}

PredictionOutcome predict_na(const Rational& a, const PredictConfig& cfg) {
  if (a.num() <= a.den()) throw DomainError("a must exceed 1, got " + a.to_string());
  PredictionOutcome out;
  out.a = a;
  out.n = locate_n(a, cfg.precision);

  if (out.n < 3) {
    // 1 < a < 3/e gives a^2 < 2.
    out.candidates = {2};
  } else {
    SegmentReport seg = segment(SeqKind::E_SEQ, out.n, cfg.precision);
    if (!seg.case_label) {
      throw FalsificationError("segment at n = " + std::to_string(out.n) + " has more than two values");
    }
    out.m = seg.m;
    out.case_label = seg.case_label;
    out.segment_values = seg.values();
    out.ell = seg.ell;
    out.bits = seg.bits;
    out.candidates = candidates_for(*seg.case_label, out.n, seg.m);
  }

  if (cfg.with_oracle && out.candidates.back() < cfg.oracle_guard) {
    FactorialCache guard_only(cfg.oracle_guard);
    out.exact = exact_na(a, guard_only);
    out.agrees = std::find(out.candidates.begin(), out.candidates.end(), *out.exact) != out.candidates.end();
  }
  return out;
}

std::vector<Rational> interval_samples(std::uint64_t n, std::size_t count, const PrecisionConfig& cfg,
                                       std::uint64_t den) {
  if (count == 0) return {};
  const mpz_class d(std::to_string(den));
  const mpz_class nn(std::to_string(n));
  // Smallest k/den above n/e and largest k/den at or below (n+1)/e.
  mpz_class first = floor_over_e(nn * d, cfg) + 1;
  mpz_class last = floor_over_e((nn + 1) * d, cfg);
  if (first > last) throw DomainError("no sample with denominator " + d.get_str() + " fits the interval");

  std::vector<Rational> out;
  if (count == 1) {
    out.emplace_back(first, d);
  } else {
    const mpz_class span = last - first;
    for (std::size_t i = 0; i < count; ++i) {
      mpz_class k = first + span * static_cast<unsigned long>(i) / static_cast<unsigned long>(count - 1);
      out.emplace_back(k, d);
    }
  }
  for (const Rational& a : out) {
    if (locate_n(a, cfg) != n) {
      throw FalsificationError("sample " + a.to_string() + " is not certified inside (n/e, (n+1)/e]");
    }
  }
  return out;
}

RangeReport verify_range(std::uint64_t n_lo, std::uint64_t n_hi, std::size_t samples_per_interval,
                         const PredictConfig& cfg, unsigned threads) {
  if (n_lo < 3 || n_lo > n_hi) throw UsageError("verify_range requires 3 <= n_lo <= n_hi");
  if (n_hi >= cfg.oracle_guard) throw ResourceError("n_hi must stay below the factorial guard");

  const std::uint64_t slots = n_hi - n_lo + 1;
  std::vector<SlotResult> results(slots);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, slots));

  if (threads <= 1) {
    for (std::uint64_t i = 0; i < slots; ++i) results[i] = verify_one(n_lo + i, samples_per_interval, cfg);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t i = t; i < slots; i += threads) {
          results[i] = verify_one(n_lo + i, samples_per_interval, cfg);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  RangeReport report;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  report.samples_per_interval = samples_per_interval;
  for (auto& slot : results) {
    for (const auto& out : slot.outcomes) {
      ++report.predictions;
      std::string label(out.case_label ? to_string(*out.case_label) : "TRIVIAL");
      ++report.case_counts[label];
      if (out.candidates.size() == 1 && out.case_label != SegmentCase::TWO_ELL_EQ_NM1) {
        ++report.singleton_outside_nm1;
      }
      if (out.agrees.value_or(false)) {
        ++report.agreements;
        const std::uint64_t offset = *out.exact - (out.n - static_cast<std::uint64_t>(out.m));
        ++report.outcome_counts[label + ":n-m+" + std::to_string(offset)];
      }
    }
    for (auto& f : slot.failures) report.failures.push_back(std::move(f));
  }
  return report;
}

}  // namespace factpow
