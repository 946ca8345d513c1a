#include "factpow/stirling_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "factpow/exact_core.hpp"

namespace factpow {

namespace {

struct TagName {
  FunctionTag tag;
  std::string_view name;
};

constexpr std::array<TagName, 19> kTagNames{{
    {FunctionTag::L, "L"},
    {FunctionTag::R, "R"},
    {FunctionTag::ell, "ell"},
    {FunctionTag::r, "r"},
    {FunctionTag::P, "P"},
    {FunctionTag::T, "T"},
    {FunctionTag::Tprime, "Tprime"},
    {FunctionTag::Tdoubleprime, "Tdoubleprime"},
    {FunctionTag::aL, "aL"},
    {FunctionTag::aR, "aR"},
    {FunctionTag::aP, "aP"},
    {FunctionTag::a_s, "a_s"},
    {FunctionTag::delta, "delta"},
    {FunctionTag::K_prop22_upper, "K_prop22_upper"},
    {FunctionTag::K_prop22_lower, "K_prop22_lower"},
    {FunctionTag::K_as, "K_as"},
    {FunctionTag::G_prop22_upper, "G_prop22_upper"},
    {FunctionTag::G_prop22_lower, "G_prop22_lower"},
    {FunctionTag::G_as, "G_as"},
}};

void require_above(FunctionTag tag, const Interval& x, long bound) {
  if (mpfr_cmp_si(x.lo(), bound) <= 0) {
    throw DomainError(std::string(to_string(tag)) + ": argument " + x.to_string() +
                      " must exceed " + std::to_string(bound));
  }
}

Interval P_of(const Interval& x) { return exp(log(x) / x); }

Interval L_of(const Interval& x) {
  Interval ln_pi = const_interval("ln_pi", x.bits());
  return exp(ln_pi / (2 * x) + 1 / ((12 * x + 1) * x));
}

Interval R_of(const Interval& x) {
  Interval ln_pi = const_interval("ln_pi", x.bits());
  return exp(ln_pi / (2 * x) + 1 / (12 * sqr(x)));
}

Interval Tprime_of(const Interval& x) { return P_of(x) * (x + 1 - log(x)) / x; }

Interval K_prop22(const Interval& y) { return exp(y) * (1 - y / sqr(y - 1)); }

std::optional<std::uint64_t> positive_integer_point(const Interval& x) {
  if (!x.is_point() || !mpfr_integer_p(x.lo()) || mpfr_sgn(x.lo()) <= 0) return std::nullopt;
  if (!mpfr_fits_uintmax_p(x.lo(), MPFR_RNDN)) return std::nullopt;
  return static_cast<std::uint64_t>(mpfr_get_uj(x.lo(), MPFR_RNDN));
}

// Running sums of ln k, one table per working precision.
class LnFactorialTable {
 public:
  Interval get(std::uint64_t n, Bits bits) {
    {
      std::shared_lock lock(mutex_);
      auto it = tables_.find(bits);
      if (it != tables_.end() && n < it->second.size()) return it->second[n];
    }
    std::unique_lock lock(mutex_);
    auto& table = tables_[bits];
    if (table.empty()) table.emplace_back(0, bits);
    table.reserve(n + 1);
    while (table.size() <= n) {
      Interval k = Interval::from_uint(table.size(), bits);
      Interval next = table.back() + log(k);
      table.push_back(std::move(next));
    }
    return table[n];
  }

 private:
  std::shared_mutex mutex_;
  std::map<Bits, std::vector<Interval>> tables_;
};

LnFactorialTable& ln_factorial_table() {
  static LnFactorialTable table;
  return table;
}

void require_positive_n(std::uint64_t n, std::string_view what) {
  if (n == 0) throw DomainError(std::string(what) + " requires n >= 1");
}

// Evaluates psi at a single point p > 0 (p given as a point interval).
Interval digamma_point(const Interval& p) {
  const Bits bits = p.bits();
  // Shift far enough that the first omitted term drops below 2^-bits, but at
  // least to 16 and at most to 4096.
  double target = std::clamp(std::exp2(static_cast<double>(bits) / 12.0), 16.0, 4096.0);
  double start = mpfr_get_d(p.lo(), MPFR_RNDD);
  auto shift = static_cast<std::uint64_t>(start >= target ? 0.0 : std::ceil(target - start));

  Interval correction(0, bits);
  Interval z = p;
  for (std::uint64_t i = 0; i < shift; ++i) {
    correction = correction + 1 / z;
    z = z + 1;
  }

  // B_2/2, B_4/4, ..., B_10/10 as exact rationals.
  static const std::array<mpq_class, 5> kCoeffs = {
      mpq_class(1, 12), mpq_class(-1, 120), mpq_class(1, 252), mpq_class(-1, 240), mpq_class(1, 132)};
  // |B_12| / 12
  static const mpq_class kOmitted(691, 32760);

  Interval inv_z2 = 1 / sqr(z);
  Interval power = inv_z2;
  Interval series(0, bits);
  for (const mpq_class& c : kCoeffs) {
    series = series + Interval::from_mpq(c, bits) * power;
    power = power * inv_z2;
  }
  // power now encloses z^-12.
  Interval bound = Interval::from_mpq(kOmitted, bits) * power;
  Interval remainder = Interval::hull(-bound, bound);

  return log(z) - 1 / (2 * z) - series + remainder - correction;
}

}  // namespace

std::string_view to_string(FunctionTag tag) {
  for (const auto& entry : kTagNames) {
    if (entry.tag == tag) return entry.name;
  }
  return "?";
}

FunctionTag function_tag_from_string(std::string_view name) {
  for (const auto& entry : kTagNames) {
    if (entry.name == name) return entry.tag;
  }
  throw UsageError("unknown function tag '" + std::string(name) + "'");
}

Interval eval(FunctionTag tag, const Interval& x) {
  switch (tag) {
    case FunctionTag::K_prop22_upper:
    case FunctionTag::K_prop22_lower:
      require_above(tag, x, 1);
      return K_prop22(x);
    case FunctionTag::K_as:
      require_above(tag, x, 1);
      return exp(x) * (4 - x) / sqr(x - 1);
    case FunctionTag::G_prop22_lower: {
      require_above(tag, x, 1);
      Interval lnx = log(x);
      return lnx / x - log(1 + lnx / (x - 1));
    }
    case FunctionTag::delta: {
      auto n = positive_integer_point(x);
      if (!n) throw DomainError("delta: argument must be a positive integer point, got " + x.to_string());
      return classical_delta(*n, x.bits());
    }
    default:
      break;
  }

  require_above(tag, x, 0);
  switch (tag) {
    case FunctionTag::L: return L_of(x);
    case FunctionTag::R: return R_of(x);
    case FunctionTag::ell: {
      Interval ln_pi = const_interval("ln_pi", x.bits());
      Interval x2 = sqr(x);
      return ln_pi / (2 * x2) + (24 * x + 1) / (sqr(12 * x + 1) * x2);
    }
    case FunctionTag::r: {
      Interval ln_pi = const_interval("ln_pi", x.bits());
      return ln_pi / (2 * sqr(x)) + 1 / (6 * sqr(x) * x);
    }
    case FunctionTag::P: return P_of(x);
    case FunctionTag::T: return x * P_of(x);
    case FunctionTag::Tprime: return Tprime_of(x);
    case FunctionTag::Tdoubleprime: {
      Interval t = x * P_of(x);
      return t * (sqr(log(x) - 1) - x) / sqr(sqr(x));
    }
    case FunctionTag::aL: return (L_of(x) - 1) * x;
    case FunctionTag::aR: return (R_of(x) - 1) * x;
    case FunctionTag::aP: return (P_of(x) - 1) * x;
    case FunctionTag::a_s: return P_of(x) * (x + 1 - log(x)) - x;
    case FunctionTag::G_prop22_upper: {
      Interval lnx = log(x);
      return lnx / x - log((x + 1) / (x + 1 - lnx));
    }
    case FunctionTag::G_as: {
      Interval lnx = log(x);
      return lnx / x - 2 * lnx + log(sqr(x) + sqr(lnx - 1) - x * lnx);
    }
    default:
      break;
  }
  throw UsageError("eval: unhandled tag " + std::string(to_string(tag)));
}

Interval ln_factorial_exact(std::uint64_t n, Bits bits) {
  if (n > kExactLnFactorialLimit) {
    throw ResourceError("exact ln n! limited to n <= " + std::to_string(kExactLnFactorialLimit));
  }
  return ln_factorial_table().get(n, bits);
}

Interval ln_factorial_robbins(std::uint64_t n, Bits bits) {
  require_positive_n(n, "ln_factorial_robbins");
  Interval nn = Interval::from_uint(n, bits);
  mpz_class twice_plus_one = mpz_class(std::to_string(n)) * 2 + 1;
  Interval n_half = Interval::from_mpq(mpq_class(twice_plus_one, 2), bits);
  Interval base = const_interval("ln_2pi", bits) / 2 + n_half * log(nn) - nn;
  Interval lower = base + 1 / (12 * nn + 1);
  Interval upper = base + 1 / (12 * nn);
  return Interval::hull(lower, upper);
}

Interval ln_factorial(std::uint64_t n, Bits bits) {
  if (n <= kExactLnFactorialLimit) return ln_factorial_exact(n, bits);
  return ln_factorial_robbins(n, bits);
}

Interval eroot_factorial_bounds(std::uint64_t n, Bits bits) {
  require_positive_n(n, "eroot_factorial_bounds");
  return exp(1 + ln_factorial(n, bits) / Interval::from_uint(n, bits));
}

Interval eroot_factorial_robbins(std::uint64_t n, Bits bits) {
  require_positive_n(n, "eroot_factorial_robbins");
  return exp(1 + ln_factorial_robbins(n, bits) / Interval::from_uint(n, bits));
}

Interval eroot_factorial_lr(std::uint64_t n, Bits bits) {
  require_positive_n(n, "eroot_factorial_lr");
  Interval x = Interval::from_uint(n, bits);
  Interval t2n = eval(FunctionTag::T, 2 * x);
  Interval lower = L_of(x) * t2n / 2;
  Interval upper = R_of(x) * t2n / 2;
  return Interval::hull(lower, upper);
}

Interval s_n(std::uint64_t n, Bits bits) {
  require_positive_n(n, "s_n");
  Interval x = Interval::from_uint(n, bits);
  return eval(FunctionTag::T, x + 1) - eval(FunctionTag::T, x);
}

Interval S_n(std::uint64_t n, Bits bits) {
  require_positive_n(n, "S_n");
  return eroot_factorial_bounds(n + 1, bits) - eroot_factorial_bounds(n, bits);
}

Interval classical_delta(std::uint64_t n, Bits bits) {
  require_positive_n(n, "classical_delta");
  BigInt fact = default_factorial_cache().factorial(n);
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), n + 1, n);
  mpq_class ratio(power, fact);
  ratio.canonicalize();
  Interval nn = Interval::from_uint(n, bits);
  return Interval::from_mpq(ratio, bits) * exp(-nn);
}

Interval digamma_interval(const Interval& x) {
  if (mpfr_sgn(x.lo()) <= 0) {
    throw DomainError("digamma: argument " + x.to_string() + " must be positive");
  }
  // psi is increasing on (0, inf).
  if (x.is_point()) return digamma_point(x);
  return Interval::hull(digamma_point(x.lower_point()), digamma_point(x.upper_point()));
}

Interval a_S_at(std::uint64_t n, Bits bits) {
  require_positive_n(n, "a_S_at");
  Interval nn = Interval::from_uint(n, bits);
  Interval ln_gamma = ln_factorial(n, bits);
  Interval g = exp(ln_gamma / nn);
  Interval psi = digamma_interval(nn + 1);
  Interval g_prime = g * (psi / nn - ln_gamma / sqr(nn));
  return (const_interval("e", bits) * g_prime - 1) * nn;
}

}  // namespace factpow
