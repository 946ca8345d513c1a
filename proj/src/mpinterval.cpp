#include "factpow/mpinterval.hpp"

#include <cmath>
#include <limits>

#include "factpow/exact_core.hpp"

namespace factpow {

namespace {

constexpr Bits kMinBits = MPFR_PREC_MIN + 1;

// RAII scratch value for endpoint computations.
struct Scratch {
  explicit Scratch(Bits bits) { mpfr_init2(v, bits); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

void require_finite(mpfr_srcptr v, std::string_view op) {
  if (mpfr_nan_p(v)) throw DomainError(std::string(op) + ": result is NaN");
  if (mpfr_inf_p(v)) throw RangeError(std::string(op) + ": overflow at working precision");
}

int significant_digits(Bits bits) {
  return static_cast<int>(std::ceil(static_cast<double>(bits) * 0.30102999566398120)) + 2;
}

std::string format_endpoint(mpfr_srcptr v, Bits bits, bool round_up) {
  char* buf = nullptr;
  int digits = significant_digits(bits) - 1;
  if (round_up) {
    mpfr_asprintf(&buf, "%.*RUe", digits, v);
  } else {
    mpfr_asprintf(&buf, "%.*RDe", digits, v);
  }
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

Interval::Interval(Bits bits) : bits_(std::max(bits, kMinBits)) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(long value, Bits bits) : Interval(bits) {
  mpfr_set_si(lo_, value, MPFR_RNDD);
  mpfr_set_si(hi_, value, MPFR_RNDU);
}

Interval::Interval(const Interval& other) : bits_(other.bits_) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : bits_(other.bits_) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    set_bits(other.bits_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  if (this != &other) {
    std::swap(bits_, other.bits_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::set_bits(Bits bits) {
  bits = std::max(bits, kMinBits);
  if (bits != bits_) {
    bits_ = bits;
    mpfr_set_prec(lo_, bits_);
    mpfr_set_prec(hi_, bits_);
  }
}

Interval Interval::from_uint(std::uint64_t value, Bits bits) {
  Interval r(bits);
  mpfr_set_uj(r.lo_, value, MPFR_RNDD);
  mpfr_set_uj(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::from_mpz(const mpz_class& value, Bits bits) {
  Interval r(bits);
  mpfr_set_z(r.lo_, value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, value.get_mpz_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_mpq(const mpq_class& value, Bits bits) {
  Interval r(bits);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_decimal(std::string_view text, Bits bits) {
  bool negative = !text.empty() && text.front() == '-';
  mpq_class v = parse_literal(negative ? text.substr(1) : text);
  if (negative) v = -v;
  return from_mpq(v, bits);
}

Interval Interval::hull(const Interval& lo, const Interval& hi) {
  Interval r(std::max(lo.bits_, hi.bits_));
  mpfr_set(r.lo_, lo.lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi.hi_, MPFR_RNDU);
  if (mpfr_greater_p(r.lo_, r.hi_)) throw DomainError("hull: lower bound exceeds upper bound");
  return r;
}

double Interval::lo_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::hi_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid_double() const {
  Scratch m(bits_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double Interval::width() const {
  Scratch w(bits_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

double Interval::relative_width() const {
  if (contains_zero()) return std::numeric_limits<double>::infinity();
  Scratch w(bits_);
  Scratch m(bits_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  if (mpfr_sgn(lo_) > 0) {
    mpfr_set(m.v, lo_, MPFR_RNDD);
  } else {
    mpfr_neg(m.v, hi_, MPFR_RNDD);
  }
  mpfr_div(w.v, w.v, m.v, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

bool Interval::contains(const mpq_class& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::is_point() const { return mpfr_equal_p(lo_, hi_); }

Interval Interval::lower_point() const {
  Interval r(bits_);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::upper_point() const {
  Interval r(bits_);
  mpfr_set(r.lo_, hi_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::with_bits(Bits bits) const {
  Interval r(bits);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

std::optional<mpz_class> Interval::common_floor() const {
  mpz_class a;
  mpz_class b;
  mpfr_get_z(a.get_mpz_t(), lo_, MPFR_RNDD);
  mpfr_get_z(b.get_mpz_t(), hi_, MPFR_RNDD);
  if (a != b) return std::nullopt;
  return a;
}

std::string Interval::lo_string() const { return format_endpoint(lo_, bits_, false); }
std::string Interval::hi_string() const { return format_endpoint(hi_, bits_, true); }
std::string Interval::to_string() const { return "[" + lo_string() + ", " + hi_string() + "]"; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.bits_);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  // Nonnegative operands are the common case; skip the four-product search.
  if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
    mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  Scratch t(r.bits_);
  bool first = true;
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw DomainError("division by an interval containing zero");
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  Scratch t(r.bits_);
  bool first = true;
  for (mpfr_srcptr x : xs) {
    for (mpfr_srcptr y : ys) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, r.lo_)) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, r.hi_)) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.bits_);
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  require_finite(r.hi_, "exp");
  return r;
}

Interval log(const Interval& x) {
  if (mpfr_sgn(x.lo_) <= 0) {
    throw DomainError("log: interval lower endpoint " + x.lo_string() + " is not positive");
  }
  Interval r(x.bits_);
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& x, const Interval& y) { return exp(y * log(x)); }

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo_) < 0) throw DomainError("sqrt: interval reaches below zero");
  Interval r(x.bits_);
  mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval sqr(const Interval& x) {
  Interval r(x.bits_);
  if (mpfr_sgn(x.lo_) >= 0) {
    mpfr_sqr(r.lo_, x.lo_, MPFR_RNDD);
    mpfr_sqr(r.hi_, x.hi_, MPFR_RNDU);
  } else if (mpfr_sgn(x.hi_) <= 0) {
    mpfr_sqr(r.lo_, x.hi_, MPFR_RNDD);
    mpfr_sqr(r.hi_, x.lo_, MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo_, 1);
    Scratch t(x.bits_);
    mpfr_sqr(r.hi_, x.lo_, MPFR_RNDU);
    mpfr_sqr(t.v, x.hi_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
  }
  return r;
}

Interval const_interval(std::string_view name, Bits bits) {
  // Work with guard bits, then round outward once so the result is within two
  // ulps at the requested precision.
  Bits work = bits + 16;
  Interval v(work);
  if (name == "e") {
    v = exp(Interval(1, work));
  } else if (name == "pi") {
    mpfr_const_pi(v.lo_, MPFR_RNDD);
    mpfr_const_pi(v.hi_, MPFR_RNDU);
  } else if (name == "ln_pi") {
    v = log(const_interval("pi", work));
  } else if (name == "ln_2pi") {
    v = log(const_interval("pi", work) * 2);
  } else if (name == "euler_gamma") {
    mpfr_const_euler(v.lo_, MPFR_RNDD);
    mpfr_const_euler(v.hi_, MPFR_RNDU);
  } else {
    throw UsageError("unknown constant '" + std::string(name) + "'");
  }
  return v.with_bits(bits);
}

Tri less(const Interval& a, const Interval& b) {
  if (mpfr_less_p(a.hi(), b.lo())) return Tri::True;
  if (mpfr_greaterequal_p(a.lo(), b.hi())) return Tri::False;
  return Tri::Unknown;
}

Tri less_equal(const Interval& a, const Interval& b) {
  if (mpfr_lessequal_p(a.hi(), b.lo())) return Tri::True;
  if (mpfr_greater_p(a.lo(), b.hi())) return Tri::False;
  return Tri::Unknown;
}

void PrecisionConfig::validate() const {
  if (start_bits < 53) throw UsageError("start_bits must be at least 53");
  if (max_bits < start_bits) throw UsageError("max_bits must be at least start_bits");
  if (growth_factor < 2) throw UsageError("growth_factor must be at least 2");
}

Unresolved::Unresolved(const std::string& what, Interval witness)
    : std::runtime_error(what + "; last enclosure " + witness.to_string()),
      witness_(std::move(witness)) {}

}  // namespace factpow
