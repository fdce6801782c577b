#pragma once

#include <mpfr.h>

#include <functional>
#include <optional>
#include <string>

#include "d4tuples/integer.hpp"

namespace d4 {

inline constexpr mpfr_prec_t kDefaultPrecision = 256;
inline constexpr mpfr_prec_t kPrecisionCap = 16384;

enum class Sign { negative, indeterminate, positive };

/// Enclosure of a real number: directed-rounding MPFR endpoints [lo, hi]
/// guaranteed to contain the exact value. A strict inequality certified on
/// the endpoints therefore holds for the exact values. The midpoint/radius
/// view is derived from the endpoints.
///
/// Values are immutable after construction; every operation is a pure
/// function returning a fresh enclosure at the wider operand precision.
class CertifiedReal {
 public:
  CertifiedReal();
  explicit CertifiedReal(mpfr_prec_t prec);
  CertifiedReal(const CertifiedReal& other);
  CertifiedReal(CertifiedReal&& other) noexcept;
  CertifiedReal& operator=(const CertifiedReal& other);
  CertifiedReal& operator=(CertifiedReal&& other) noexcept;
  ~CertifiedReal();

  static CertifiedReal exact(const Integer& n,
                             mpfr_prec_t prec = kDefaultPrecision);
  static CertifiedReal exact(long n, mpfr_prec_t prec = kDefaultPrecision);
  static CertifiedReal from_rational(const Rational& q,
                                     mpfr_prec_t prec = kDefaultPrecision);
  static CertifiedReal from_decimal(std::string_view text,
                                    mpfr_prec_t prec = kDefaultPrecision);
  /// Enclosure [lo, hi] of a value only known to lie between two rationals.
  static CertifiedReal hull(const Rational& lo, const Rational& hi,
                            mpfr_prec_t prec = kDefaultPrecision);

  mpfr_prec_t precision() const { return prec_; }

  CertifiedReal add(const CertifiedReal& o) const;
  CertifiedReal sub(const CertifiedReal& o) const;
  CertifiedReal mul(const CertifiedReal& o) const;
  CertifiedReal div(const CertifiedReal& o) const;  // DomainError if o spans 0
  CertifiedReal neg() const;
  CertifiedReal abs() const;
  CertifiedReal recip() const;
  CertifiedReal sqrt() const;  // DomainError if lo < 0
  CertifiedReal log() const;   // DomainError unless lo > 0
  CertifiedReal pow(unsigned long e) const;

  Sign sign() const;
  /// true: certified *this < o; false: certified *this > o; nullopt: overlap.
  std::optional<bool> certified_less(const CertifiedReal& o) const;

  bool contains(const Rational& value) const;
  bool contains_integer(const Integer& value) const;
  /// Engaged when the enclosure contains exactly one integer.
  std::optional<Integer> unique_integer() const;
  Integer floor_upper() const;  // floor(hi)
  Integer ceil_lower() const;   // ceil(lo)

  Rational lower_rational() const;  // exact endpoint
  Rational upper_rational() const;
  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up
  double midpoint_double() const;
  double radius_double() const;       // rounded up
  Rational radius_rational() const;   // exact (hi - lo) / 2 upper bound

  std::string lower_string(int digits = 17) const;
  std::string upper_string(int digits = 17) const;
  std::string to_string(int digits = 12) const;  // "[lo, hi]"

  friend CertifiedReal operator+(const CertifiedReal& a,
                                 const CertifiedReal& b) {
    return a.add(b);
  }
  friend CertifiedReal operator-(const CertifiedReal& a,
                                 const CertifiedReal& b) {
    return a.sub(b);
  }
  friend CertifiedReal operator*(const CertifiedReal& a,
                                 const CertifiedReal& b) {
    return a.mul(b);
  }
  friend CertifiedReal operator/(const CertifiedReal& a,
                                 const CertifiedReal& b) {
    return a.div(b);
  }
  friend CertifiedReal operator-(const CertifiedReal& a) { return a.neg(); }

 private:
  struct uninit_t {};
  CertifiedReal(mpfr_prec_t prec, uninit_t);

  mpfr_prec_t prec_;
  mpfr_t lo_;
  mpfr_t hi_;
};

/// Pointwise max, sound for the max function.
CertifiedReal certified_max(const CertifiedReal& a, const CertifiedReal& b);

/// Enclosure of the distance from y to the nearest integer; always a subset
/// of [0, 1/2]. Falls back to [0, 1/2] when y is too wide to localize.
CertifiedReal distance_to_nearest_integer(const CertifiedReal& y);

/// Natural log as a free function (same as x.log()).
CertifiedReal certified_log(const CertifiedReal& x);

/// Evaluates expr at doubling precision until the sign of the result is
/// decided or the cap is reached. Indeterminate at the cap is a first-class
/// result, never an error.
Sign certified_sign(const std::function<CertifiedReal(mpfr_prec_t)>& expr,
                    mpfr_prec_t initial = kDefaultPrecision,
                    mpfr_prec_t cap = kPrecisionCap);

/// Certified strict comparison lhs(p) < rhs(p) under precision escalation.
/// Throws PrecisionError if still undecided at the cap.
bool certified_less_escalating(
    const std::function<CertifiedReal(mpfr_prec_t)>& lhs,
    const std::function<CertifiedReal(mpfr_prec_t)>& rhs,
    mpfr_prec_t initial = kDefaultPrecision, mpfr_prec_t cap = kPrecisionCap);

}  // namespace d4
