#pragma once

// Interval evaluation of the closed-form functions built around the Robbins
// refinement of Stirling's formula
//
//   sqrt(2 pi) n^(n+1/2) e^-n e^(1/(12n+1)) < n! < sqrt(2 pi) n^(n+1/2) e^-n e^(1/(12n)),
//
// together with the difference sequences s_n = T(n+1) - T(n) and
// S_n = e (n+1)!^(1/(n+1)) - e n!^(1/n).

#include <cstdint>
#include <string_view>

#include "factpow/mpinterval.hpp"

namespace factpow {

enum class FunctionTag {
  L,             // pi^(1/2x) e^(1/((12x+1)x))
  R,             // pi^(1/2x) e^(1/(12x^2))
  ell,           // -L'/L
  r,             // -R'/R
  P,             // x^(1/x)
  T,             // x P(x)
  Tprime,
  Tdoubleprime,
  aL,            // (L(x) - 1) x
  aR,
  aP,
  a_s,           // (T'(x) - 1) x = P(x)(x + 1 - ln x) - x
  delta,         // (n+1)^n / (n! e^n), positive integers only
  K_prop22_upper,  // e^y (1 - y/(y-1)^2), compared against -1
  K_prop22_lower,  // same K, compared against +1
  K_as,            // e^y (4 - y)/(y-1)^2
  G_prop22_upper,  // ln x/x - ln((x+1)/(x+1-ln x))
  G_prop22_lower,  // ln x/x - ln(1 + ln x/(x-1))
  G_as,            // ln x/x - 2 ln x + ln(x^2 + (ln x - 1)^2 - x ln x)
};

std::string_view to_string(FunctionTag tag);
/// Inverse of to_string; UsageError for unknown names.
FunctionTag function_tag_from_string(std::string_view name);

/// Enclosure of the tagged closed form at every point of x. DomainError (naming
/// the tag) when x leaves the formula's domain.
Interval eval(FunctionTag tag, const Interval& x);

/// Largest n for which ln n! is taken from the exact running sum of ln k
/// rather than from the Robbins sandwich.
inline constexpr std::uint64_t kExactLnFactorialLimit = 10'000;

/// ln n! as a running sum of ln k (cached per precision), n <= kExactLnFactorialLimit.
Interval ln_factorial_exact(std::uint64_t n, Bits bits);
/// ln n! enclosed by the Robbins bounds; width is at least 1/(12n) - 1/(12n+1).
Interval ln_factorial_robbins(std::uint64_t n, Bits bits);
/// Exact route up to the limit, Robbins beyond it.
Interval ln_factorial(std::uint64_t n, Bits bits);

/// e * n!^(1/n), built in log space as exp(1 + ln(n!)/n). n >= 1.
Interval eroot_factorial_bounds(std::uint64_t n, Bits bits);
/// Same quantity from the Robbins sandwich alone, for any n >= 1.
Interval eroot_factorial_robbins(std::uint64_t n, Bits bits);
/// Direct two-sided form (1/2) L(n) T(2n) < e n!^(1/n) < (1/2) R(n) T(2n).
Interval eroot_factorial_lr(std::uint64_t n, Bits bits);

/// s_n = (n+1)^(1+1/(n+1)) - n^(1+1/n).
Interval s_n(std::uint64_t n, Bits bits);
/// S_n = e (n+1)!^(1/(n+1)) - e n!^(1/n).
Interval S_n(std::uint64_t n, Bits bits);

/// (n+1)^n / (n! e^n) from the exact rational (n+1)^n/n!. Subject to the
/// default factorial guard.
Interval classical_delta(std::uint64_t n, Bits bits);

/// Digamma by upward recurrence followed by the asymptotic series through the
/// B_10 term; the first omitted term bounds the truncation error.
Interval digamma_interval(const Interval& x);

/// a_S(n) = (e G'(n) - 1) n with G(x) = Gamma(x+1)^(1/x).
Interval a_S_at(std::uint64_t n, Bits bits);

}  // namespace factpow
