#include "factpow/exact_core.hpp"

#include <cctype>
#include <mutex>

#include "factpow/errors.hpp"

namespace factpow {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_digits(std::string_view s) { return BigInt(std::string(s), 10); }

void require_base(const Rational& a) {
  if (a.num() <= a.den()) {
    throw DomainError("base a = " + a.to_string() + " must exceed 1");
  }
}

}  // namespace

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (sgn(num_) <= 0 || sgn(den_) <= 0) {
    throw DomainError("rational must have positive numerator and denominator");
  }
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num_.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

mpq_class parse_literal(std::string_view text) {
  if (text.empty()) throw UsageError("empty numeric literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto p = text.substr(0, slash);
    auto q = text.substr(slash + 1);
    if (!all_digits(p) || !all_digits(q)) {
      throw UsageError("malformed fraction '" + std::string(text) + "'");
    }
    BigInt den = parse_digits(q);
    if (den == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    mpq_class v(parse_digits(p), den);
    v.canonicalize();
    return v;
  }

  auto dot = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  bool int_ok = int_part.empty() || all_digits(int_part);
  bool frac_ok = frac_part.empty() || all_digits(frac_part);
  if (!int_ok || !frac_ok || (int_part.empty() && frac_part.empty())) {
    throw UsageError("malformed number '" + std::string(text) + "'");
  }
  BigInt num = parse_digits(std::string(int_part.empty() ? "0" : int_part) + std::string(frac_part));
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_part.size());
  mpq_class v(num, den);
  v.canonicalize();
  return v;
}

Rational Rational::parse(std::string_view text) {
  mpq_class v = parse_literal(text);
  if (v == 0) throw UsageError("value must be positive: '" + std::string(text) + "'");
  return Rational(v.get_num(), v.get_den());
}

mpq_class Rational::value() const {
  mpq_class q(num_, den_);
  return q;
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.get_str();
  return num_.get_str() + "/" + den_.get_str();
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::Less: return "LT";
    case Ordering::Equal: return "EQ";
    case Ordering::Greater: return "GT";
  }
  return "?";
}

FactorialCache::FactorialCache(std::uint64_t guard) : guard_(guard) {
  if (guard_ == 0) throw UsageError("factorial guard must be positive");
  entries_.emplace_back(1);
}

void FactorialCache::check_guard(std::uint64_t n) const {
  if (n >= guard_) {
    throw ResourceError("factorial guard exceeded: n = " + std::to_string(n) +
                        " is not below the limit " + std::to_string(guard_));
  }
}

std::uint64_t FactorialCache::high_water() const {
  std::shared_lock lock(mutex_);
  return entries_.size() - 1;
}

BigInt FactorialCache::factorial(std::uint64_t n) {
  check_guard(n);
  {
    std::shared_lock lock(mutex_);
    if (n < entries_.size()) return entries_[n];
  }
  std::unique_lock lock(mutex_);
  entries_.reserve(n + 1);
  while (entries_.size() <= n) {
    BigInt next = entries_.back() * static_cast<unsigned long>(entries_.size());
    entries_.push_back(std::move(next));
  }
  return entries_[n];
}

FactorialCache& default_factorial_cache() {
  static FactorialCache cache;
  return cache;
}

Ordering cmp_pow_factorial(const Rational& a, std::uint64_t n, FactorialCache& cache) {
  require_base(a);
  if (n == 0) throw DomainError("cmp_pow_factorial requires n >= 1");
  BigInt fact = cache.factorial(n);
  BigInt lhs;
  BigInt rhs;
  mpz_pow_ui(lhs.get_mpz_t(), a.num().get_mpz_t(), n);
  mpz_pow_ui(rhs.get_mpz_t(), a.den().get_mpz_t(), n);
  rhs *= fact;
  int c = cmp(lhs, rhs);
  if (c < 0) return Ordering::Less;
  if (c > 0) return Ordering::Greater;
  return Ordering::Equal;
}

Ordering cmp_pow_factorial(const Rational& a, std::uint64_t n) {
  return cmp_pow_factorial(a, n, default_factorial_cache());
}

std::uint64_t exact_na(const Rational& a, FactorialCache& cache) {
  require_base(a);
  // Running products p^n and q^n * n! visit the same factorials the cache
  // would, one small multiplication per step.
  BigInt lhs = a.num();
  BigInt rhs = a.den();
  for (std::uint64_t n = 2;; ++n) {
    cache.check_guard(n);
    lhs *= a.num();
    rhs *= a.den();
    rhs *= static_cast<unsigned long>(n);
    if (lhs <= rhs) return n;
  }
}

std::uint64_t exact_na(const Rational& a) { return exact_na(a, default_factorial_cache()); }

}  // namespace factpow
