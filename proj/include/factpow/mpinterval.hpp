#pragma once

// Arbitrary-precision interval arithmetic with outward rounding.
//
// Every operation returns an interval that contains the exact image of its
// operands: lower endpoints are rounded toward -inf and upper endpoints toward
// +inf at each primitive step. Results carry the larger precision of their
// operands.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

#include "factpow/errors.hpp"

namespace factpow {

using Bits = mpfr_prec_t;

class Interval {
 public:
  explicit Interval(Bits bits = 128);
  Interval(long value, Bits bits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval from_uint(std::uint64_t value, Bits bits);
  static Interval from_mpz(const mpz_class& value, Bits bits);
  static Interval from_mpq(const mpq_class& value, Bits bits);
  /// Exact decimal literal such as "6.7537", enclosed outward.
  static Interval from_decimal(std::string_view text, Bits bits);
  /// [lo, hi] from two intervals: lo.lo and hi.hi.
  static Interval hull(const Interval& lo, const Interval& hi);

  mpfr_srcptr lo() const { return lo_; }
  mpfr_srcptr hi() const { return hi_; }
  Bits bits() const { return bits_; }

  /// Endpoints rounded outward to double.
  double lo_double() const;
  double hi_double() const;
  double mid_double() const;
  /// Upper bound on hi - lo, as a double.
  double width() const;
  /// Upper bound on (hi - lo) / min|x| over the interval; inf if it contains 0.
  double relative_width() const;

  bool contains(const mpq_class& q) const;
  bool contains(const Interval& inner) const;
  bool contains_zero() const;
  bool is_point() const;

  /// Degenerate intervals at each endpoint.
  Interval lower_point() const;
  Interval upper_point() const;

  /// Same enclosure rounded outward to a different precision.
  Interval with_bits(Bits bits) const;

  /// floor(x) when both endpoints share it (so the floor of every member is
  /// known), otherwise nullopt.
  std::optional<mpz_class> common_floor() const;

  /// Endpoints printed with enough significant digits to distinguish them;
  /// lo rounded down and hi rounded up so the printed pair still encloses.
  std::string lo_string() const;
  std::string hi_string() const;
  std::string to_string() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);

  friend Interval operator+(const Interval& a, long b) { return a + Interval(b, a.bits_); }
  friend Interval operator+(long a, const Interval& b) { return Interval(a, b.bits_) + b; }
  friend Interval operator-(const Interval& a, long b) { return a - Interval(b, a.bits_); }
  friend Interval operator-(long a, const Interval& b) { return Interval(a, b.bits_) - b; }
  friend Interval operator*(const Interval& a, long b) { return a * Interval(b, a.bits_); }
  friend Interval operator*(long a, const Interval& b) { return Interval(a, b.bits_) * b; }
  friend Interval operator/(const Interval& a, long b) { return a / Interval(b, a.bits_); }
  friend Interval operator/(long a, const Interval& b) { return Interval(a, b.bits_) / b; }

 private:
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval sqrt(const Interval& x);
  friend Interval sqr(const Interval& x);
  friend Interval const_interval(std::string_view name, Bits bits);

  void set_bits(Bits bits);

  Bits bits_;
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval exp(const Interval& x);
/// Natural log; DomainError unless x.lo > 0.
Interval log(const Interval& x);
/// x^y as exp(y ln x); DomainError unless x.lo > 0.
Interval pow(const Interval& x, const Interval& y);
Interval sqrt(const Interval& x);
Interval sqr(const Interval& x);

/// Enclosure of a named constant: "e", "pi", "ln_pi", "ln_2pi", "euler_gamma".
/// Width is at most two ulps at `bits`. UsageError on unknown names.
Interval const_interval(std::string_view name, Bits bits);

/// Three-valued outcome of an interval comparison.
enum class Tri { False, True, Unknown };

constexpr Tri tri_not(Tri t) {
  return t == Tri::True ? Tri::False : t == Tri::False ? Tri::True : Tri::Unknown;
}
constexpr Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::True && b == Tri::True) return Tri::True;
  return Tri::Unknown;
}

/// Decides a < b for every pair of members (True), for none (False), or neither.
Tri less(const Interval& a, const Interval& b);
Tri less_equal(const Interval& a, const Interval& b);
inline Tri greater(const Interval& a, const Interval& b) { return less(b, a); }
inline Tri greater_equal(const Interval& a, const Interval& b) { return less_equal(b, a); }

inline bool certainly_less(const Interval& a, const Interval& b) { return less(a, b) == Tri::True; }
inline bool certainly_less_equal(const Interval& a, const Interval& b) {
  return less_equal(a, b) == Tri::True;
}

/// Working-precision policy for the escalation driver.
struct PrecisionConfig {
  Bits start_bits = 128;
  Bits max_bits = 8192;
  int growth_factor = 2;

  /// Throws UsageError when the invariants start >= 53, max >= start, growth >= 2 fail.
  void validate() const;
};

/// Raised when a decision stays undecided at max precision.
class Unresolved : public std::runtime_error {
 public:
  Unresolved(const std::string& what, Interval witness);
  const Interval& witness() const { return witness_; }

 private:
  Interval witness_;
};

/// One attempt of an escalating computation: a value once decided, plus the
/// enclosure that justified (or failed to justify) it.
template <class T>
struct Attempt {
  std::optional<T> value;
  Interval witness;
};

template <class T>
struct Resolved {
  T value;
  Bits bits;
};

/// Runs `attempt(bits)` at start_bits, growth_factor * start_bits, ... up to
/// max_bits and returns the first decided value. Throws Unresolved carrying the
/// last witness otherwise.
template <class Fn>
auto escalate(const PrecisionConfig& cfg, std::string_view what, Fn&& attempt)
    -> Resolved<typename decltype(attempt(Bits{}).value)::value_type> {
  cfg.validate();
  Bits bits = cfg.start_bits;
  while (true) {
    auto result = attempt(bits);
    if (result.value) return {std::move(*result.value), bits};
    if (bits >= cfg.max_bits) {
      throw Unresolved(std::string(what) + " undecided at " + std::to_string(bits) + " bits",
                       std::move(result.witness));
    }
    bits = std::min<Bits>(bits * cfg.growth_factor, cfg.max_bits);
  }
}

/// Evaluates a three-valued predicate under escalation. The predicate returns
/// its verdict and the enclosure it examined.
template <class Fn>
bool resolve(const PrecisionConfig& cfg, std::string_view what, Fn&& predicate) {
  return escalate(cfg, what, [&](Bits bits) -> Attempt<bool> {
           std::pair<Tri, Interval> v = predicate(bits);
           if (v.first == Tri::Unknown) return {std::nullopt, std::move(v.second)};
           return {v.first == Tri::True, std::move(v.second)};
         })
      .value;
}

}  // namespace factpow
