#include "d4tuples/continued_fraction.hpp"

#include <string>

#include "d4tuples/errors.hpp"

namespace d4 {

namespace {

Integer rational_floor(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

}  // namespace

ContinuedFraction continued_fraction_prefix(const CertifiedReal& x,
                                            std::size_t max_depth) {
  ContinuedFraction cf;
  cf.partial_quotients.reserve(max_depth);
  cf.convergents.reserve(max_depth);

  // Exact rational interval; the endpoints are dyadic rationals.
  Rational lo = x.lower_rational();
  Rational hi = x.upper_rational();

  Integer p_prev(1), p_prev2(0);
  Integer q_prev(0), q_prev2(1);

  for (std::size_t k = 0; k < max_depth; ++k) {
    Integer fl = rational_floor(lo);
    Integer fh = rational_floor(hi);
    if (fl != fh) break;  // quotient not certified at this precision

    Rational frac_lo = lo - Rational(fl);
    Rational frac_hi = hi - Rational(fl);
    if (sgn(frac_lo) == 0) break;  // endpoint hit an integer: cannot certify
                                   // that the expansion continues

    cf.partial_quotients.push_back(fl);
    Integer p = fl * p_prev + p_prev2;
    Integer q = fl * q_prev + q_prev2;
    cf.convergents.emplace_back(p, q);
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;

    // Gauss map on the interval: 1/(x - a) reverses the endpoints.
    Rational next_lo = 1 / frac_hi;
    Rational next_hi = 1 / frac_lo;
    lo = next_lo;
    hi = next_hi;
  }
  return cf;
}

ContinuedFraction continued_fraction_of(const CertifiedReal& x,
                                        std::size_t depth) {
  ContinuedFraction cf = continued_fraction_prefix(x, depth);
  if (cf.partial_quotients.size() < depth)
    throw PrecisionError(
        "continued_fraction_of: cannot certify partial quotient at index " +
        std::to_string(cf.partial_quotients.size()));
  return cf;
}

}  // namespace d4
