#pragma once

#include <cstdint>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace factpow {

using BigInt = mpz_class;

/// Exact positive fraction num/den, always stored in lowest terms.
class Rational {
 public:
  Rational(BigInt num, BigInt den);
  explicit Rational(std::int64_t value) : Rational(BigInt(static_cast<long>(value)), BigInt(1)) {}

  /// Accepts "p/q", an integer literal, or a decimal literal such as "2.5".
  /// Decimals are converted exactly ("2.5" is 5/2). Throws UsageError.
  static Rational parse(std::string_view text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  mpq_class value() const;

  std::string to_string() const;

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value() < b.value(); }

 private:
  BigInt num_;
  BigInt den_;
};

/// Exact value of an unsigned literal: "p/q", an integer, or a decimal such as
/// "2.5". Throws UsageError when malformed or when q = 0.
mpq_class parse_literal(std::string_view text);

enum class Ordering { Less, Equal, Greater };

std::string_view to_string(Ordering o);

/// Memoized k! for k up to a guard. Concurrent readers, exclusive extension.
class FactorialCache {
 public:
  static constexpr std::uint64_t kDefaultGuard = 1'000'000;

  explicit FactorialCache(std::uint64_t guard = kDefaultGuard);

  /// n! for n < guard; throws ResourceError naming the limit otherwise.
  BigInt factorial(std::uint64_t n);

  std::uint64_t guard() const { return guard_; }
  std::uint64_t high_water() const;

  void check_guard(std::uint64_t n) const;

 private:
  std::uint64_t guard_;
  mutable std::shared_mutex mutex_;
  std::vector<BigInt> entries_;
};

/// Process-wide cache with the default guard.
FactorialCache& default_factorial_cache();

/// Exact ordering of a^n against n!, computed as p^n vs q^n * n!.
Ordering cmp_pow_factorial(const Rational& a, std::uint64_t n, FactorialCache& cache);
Ordering cmp_pow_factorial(const Rational& a, std::uint64_t n);

/// Least n with a^n <= n!, by upward scan from n = 2. Requires a > 1.
std::uint64_t exact_na(const Rational& a, FactorialCache& cache);
std::uint64_t exact_na(const Rational& a);

}  // namespace factpow
