#include "d4tuples/real.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <utility>

#include "d4tuples/errors.hpp"

namespace d4 {

namespace {

mpfr_prec_t clamp_prec(mpfr_prec_t p) {
  return std::max<mpfr_prec_t>(p, MPFR_PREC_MIN);
}

std::string format_endpoint(const mpfr_t x, int digits, mpfr_rnd_t rnd) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*R*g", digits, rnd, x);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

CertifiedReal::CertifiedReal(mpfr_prec_t prec, uninit_t)
    : prec_(clamp_prec(prec)) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
}

CertifiedReal::CertifiedReal() : CertifiedReal(kDefaultPrecision) {}

CertifiedReal::CertifiedReal(mpfr_prec_t prec) : CertifiedReal(prec, uninit_t{}) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

CertifiedReal::CertifiedReal(const CertifiedReal& other)
    : CertifiedReal(other.prec_, uninit_t{}) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);  // same precision: exact
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

CertifiedReal::CertifiedReal(CertifiedReal&& other) noexcept
    : prec_(other.prec_) {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

CertifiedReal& CertifiedReal::operator=(const CertifiedReal& other) {
  if (this != &other) {
    CertifiedReal tmp(other);
    *this = std::move(tmp);
  }
  return *this;
}

CertifiedReal& CertifiedReal::operator=(CertifiedReal&& other) noexcept {
  if (this != &other) {
    prec_ = other.prec_;
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }
  return *this;
}

CertifiedReal::~CertifiedReal() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

CertifiedReal CertifiedReal::exact(const Integer& n, mpfr_prec_t prec) {
  CertifiedReal r(prec, uninit_t{});
  mpfr_set_z(r.lo_, n.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi_, n.get_mpz_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::exact(long n, mpfr_prec_t prec) {
  CertifiedReal r(prec, uninit_t{});
  mpfr_set_si(r.lo_, n, MPFR_RNDD);
  mpfr_set_si(r.hi_, n, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_rational(const Rational& q, mpfr_prec_t prec) {
  CertifiedReal r(prec, uninit_t{});
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::from_decimal(std::string_view text,
                                          mpfr_prec_t prec) {
  return from_rational(rational_from_decimal(text), prec);
}

CertifiedReal CertifiedReal::hull(const Rational& lo, const Rational& hi,
                                  mpfr_prec_t prec) {
  if (lo > hi) throw DomainError("CertifiedReal::hull: lo > hi");
  CertifiedReal r(prec, uninit_t{});
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::add(const CertifiedReal& o) const {
  CertifiedReal r(std::max(prec_, o.prec_), uninit_t{});
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::sub(const CertifiedReal& o) const {
  CertifiedReal r(std::max(prec_, o.prec_), uninit_t{});
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::mul(const CertifiedReal& o) const {
  const mpfr_prec_t p = std::max(prec_, o.prec_);
  CertifiedReal r(p, uninit_t{});
  mpfr_t t;
  mpfr_init2(t, p);

  // lo: minimum of the four products rounded down.
  mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  // hi: maximum of the four products rounded up.
  mpfr_mul(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_mul(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_mul(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);

  mpfr_clear(t);
  return r;
}

CertifiedReal CertifiedReal::div(const CertifiedReal& o) const {
  if (mpfr_sgn(o.lo_) <= 0 && mpfr_sgn(o.hi_) >= 0)
    throw DomainError("CertifiedReal::div: divisor enclosure spans zero");
  const mpfr_prec_t p = std::max(prec_, o.prec_);
  CertifiedReal r(p, uninit_t{});
  mpfr_t t;
  mpfr_init2(t, p);

  mpfr_div(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDD);
  mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);

  mpfr_div(r.hi_, lo_, o.lo_, MPFR_RNDU);
  mpfr_div(t, lo_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_div(t, hi_, o.hi_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);

  mpfr_clear(t);
  return r;
}

CertifiedReal CertifiedReal::neg() const {
  CertifiedReal r(prec_, uninit_t{});
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);  // same precision: exact
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return neg();
  CertifiedReal r(prec_, uninit_t{});
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::recip() const {
  if (mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0)
    throw DomainError("CertifiedReal::recip: enclosure spans zero");
  CertifiedReal r(prec_, uninit_t{});
  mpfr_ui_div(r.lo_, 1, hi_, MPFR_RNDD);
  mpfr_ui_div(r.hi_, 1, lo_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::sqrt() const {
  if (mpfr_sgn(lo_) < 0)
    throw DomainError("CertifiedReal::sqrt: enclosure reaches below zero");
  CertifiedReal r(prec_, uninit_t{});
  mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::log() const {
  if (mpfr_sgn(lo_) <= 0)
    throw DomainError("CertifiedReal::log: enclosure touches zero or below");
  CertifiedReal r(prec_, uninit_t{});
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

CertifiedReal CertifiedReal::pow(unsigned long e) const {
  CertifiedReal r(prec_, uninit_t{});
  if (e == 0) {
    mpfr_set_ui(r.lo_, 1, MPFR_RNDD);
    mpfr_set_ui(r.hi_, 1, MPFR_RNDU);
    return r;
  }
  if (e % 2 == 1 || mpfr_sgn(lo_) >= 0) {
    // x^e monotone increasing on the enclosure.
    mpfr_pow_ui(r.lo_, lo_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, e, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(hi_) <= 0) {
    // even power of a non-positive range: decreasing.
    mpfr_pow_ui(r.lo_, hi_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, lo_, e, MPFR_RNDU);
    return r;
  }
  // even power across zero: [0, max(lo^e, hi^e)]
  mpfr_set_zero(r.lo_, 1);
  mpfr_t t;
  mpfr_init2(t, prec_);
  mpfr_pow_ui(r.hi_, lo_, e, MPFR_RNDU);
  mpfr_pow_ui(t, hi_, e, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

Sign CertifiedReal::sign() const {
  if (mpfr_sgn(lo_) > 0) return Sign::positive;
  if (mpfr_sgn(hi_) < 0) return Sign::negative;
  return Sign::indeterminate;
}

std::optional<bool> CertifiedReal::certified_less(const CertifiedReal& o) const {
  if (mpfr_cmp(hi_, o.lo_) < 0) return true;
  if (mpfr_cmp(lo_, o.hi_) > 0) return false;
  return std::nullopt;
}

bool CertifiedReal::contains(const Rational& value) const {
  return mpfr_cmp_q(lo_, value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, value.get_mpq_t()) >= 0;
}

bool CertifiedReal::contains_integer(const Integer& value) const {
  return mpfr_cmp_z(lo_, value.get_mpz_t()) <= 0 &&
         mpfr_cmp_z(hi_, value.get_mpz_t()) >= 0;
}

std::optional<Integer> CertifiedReal::unique_integer() const {
  Integer lo_ceil = ceil_lower();
  Integer hi_floor = floor_upper();
  if (lo_ceil == hi_floor) return lo_ceil;
  return std::nullopt;
}

Integer CertifiedReal::floor_upper() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), hi_, MPFR_RNDD);
  return z;
}

Integer CertifiedReal::ceil_lower() const {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), lo_, MPFR_RNDU);
  return z;
}

Rational CertifiedReal::lower_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational CertifiedReal::upper_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double CertifiedReal::lower_double() const {
  return mpfr_get_d(lo_, MPFR_RNDD);
}

double CertifiedReal::upper_double() const {
  return mpfr_get_d(hi_, MPFR_RNDU);
}

double CertifiedReal::midpoint_double() const {
  mpfr_t m;
  mpfr_init2(m, 64);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double CertifiedReal::radius_double() const {
  mpfr_t r;
  mpfr_init2(r, 64);
  mpfr_sub(r, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(r, r, 1, MPFR_RNDU);
  double d = mpfr_get_d(r, MPFR_RNDU);
  mpfr_clear(r);
  return d;
}

Rational CertifiedReal::radius_rational() const {
  Rational r = upper_rational() - lower_rational();
  r /= 2;
  return r;
}

std::string CertifiedReal::lower_string(int digits) const {
  return format_endpoint(lo_, digits, MPFR_RNDD);
}

std::string CertifiedReal::upper_string(int digits) const {
  return format_endpoint(hi_, digits, MPFR_RNDU);
}

std::string CertifiedReal::to_string(int digits) const {
  return "[" + lower_string(digits) + ", " + upper_string(digits) + "]";
}

CertifiedReal certified_max(const CertifiedReal& a, const CertifiedReal& b) {
  // max is monotone in both arguments, so endpoint-wise max is sound.
  Rational lo = std::max(a.lower_rational(), b.lower_rational());
  Rational hi = std::max(a.upper_rational(), b.upper_rational());
  return CertifiedReal::hull(lo, hi, std::max(a.precision(), b.precision()));
}

CertifiedReal distance_to_nearest_integer(const CertifiedReal& y) {
  const mpfr_prec_t p = y.precision();
  Rational lo = y.lower_rational();
  Rational hi = y.upper_rational();
  Rational mid = (lo + hi) / 2;
  // nearest integer to the midpoint
  Integer nearest;
  {
    Rational shifted = mid + Rational(1, 2);
    mpz_fdiv_q(nearest.get_mpz_t(), shifted.get_num().get_mpz_t(),
               shifted.get_den().get_mpz_t());
  }
  Rational dlo = lo - Rational(nearest);
  Rational dhi = hi - Rational(nearest);
  Rational half(1, 2);
  if (dlo < -half || dhi > half) {
    // Too wide to attribute to one integer; the distance function is always
    // within [0, 1/2].
    return CertifiedReal::hull(Rational(0), half, p);
  }
  // |[dlo, dhi]|
  Rational alo, ahi;
  if (sgn(dlo) >= 0) {
    alo = dlo;
    ahi = dhi;
  } else if (sgn(dhi) <= 0) {
    alo = -dhi;
    ahi = -dlo;
  } else {
    alo = 0;
    ahi = std::max(Rational(-dlo), dhi);
  }
  return CertifiedReal::hull(alo, ahi, p);
}

CertifiedReal certified_log(const CertifiedReal& x) { return x.log(); }

Sign certified_sign(const std::function<CertifiedReal(mpfr_prec_t)>& expr,
                    mpfr_prec_t initial, mpfr_prec_t cap) {
  for (mpfr_prec_t p = initial;; p *= 2) {
    Sign s = expr(p).sign();
    if (s != Sign::indeterminate) return s;
    if (p >= cap) return Sign::indeterminate;
  }
}

bool certified_less_escalating(
    const std::function<CertifiedReal(mpfr_prec_t)>& lhs,
    const std::function<CertifiedReal(mpfr_prec_t)>& rhs, mpfr_prec_t initial,
    mpfr_prec_t cap) {
  for (mpfr_prec_t p = initial;; p *= 2) {
    auto cmp = lhs(p).certified_less(rhs(p));
    if (cmp.has_value()) return *cmp;
    if (p >= cap)
      throw PrecisionError(
          "certified_less_escalating: undecided at precision cap");
  }
}

}  // namespace d4
