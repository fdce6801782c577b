#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "d4tuples/integer.hpp"
#include "d4tuples/pell.hpp"
#include "d4tuples/real.hpp"

namespace d4 {

/// Lower bound 0.4672 (a+1)^{-1/2} b^{1/2} on any admitted solution index m.
/// The hypothesis behind it requires b >= b_1(a) = 64a + 32; with
/// enforce_hypothesis the gate throws DomainError, without it the expression
/// is evaluated as-is (used for reporting on out-of-hypothesis contexts).
CertifiedReal m_lower_bound(const Integer& a, const Integer& b,
                            mpfr_prec_t prec = kDefaultPrecision,
                            bool enforce_hypothesis = true);

/// The simultaneous-approximation exponent
/// lambda = 1 + log(11(a+1)N) / log(0.041 a^-1 (a+1)^-1 N^2), certified < 2,
/// valid for N a multiple of a(a+1) with N >= 270 a (a+1)^2. The measure is
/// (inverse_measure)^{-1} q^{-lambda} with inverse_measure = 2.96e28 N(a+1).
struct RickertParams {
  Integer a, N;
  CertifiedReal lambda;
  Integer inverse_measure;
};
RickertParams rickert_lambda(const Integer& a, const Integer& N,
                             mpfr_prec_t prec = kDefaultPrecision);

/// max{|theta1 - aty/(a(a+1)z)|, |theta2 - (a+1)sx/(a(a+1)z)|} for a
/// solution (x, y, z) of the Pellian system, certified below (2b/a) z^{-2}.
/// theta1 = sqrt(1 + 4a/N), theta2 = sqrt(1 + 4(a+1)/N), N = a(a+1)b.
struct ThetaQuality {
  CertifiedReal max_error;
  CertifiedReal allowance;
  bool certified_within = false;
};
ThetaQuality theta_approximation_quality(const Integer& a, const Integer& b,
                                         const Integer& x, const Integer& y,
                                         const Integer& z,
                                         mpfr_prec_t prec = kDefaultPrecision);

/// Upper bound on log z:
/// log(5.92e28 a^2 (a+1)^4 b^2) log(0.041 a(a+1) b^2) / log(0.0037 b/(a+1)).
/// Empty when the denominator condition 0.0037 b/(a+1) > 1 fails (vacuous).
std::optional<CertifiedReal> z_log_upper_bound(
    const Integer& a, const Integer& b, mpfr_prec_t prec = kDefaultPrecision);

/// True iff the combined inequality
/// 0.4672 (a+1)^{-1/2} b^{1/2} < z-log-bound / log(alpha)
/// FAILS (certified), i.e. the pair admits no solution. Requires b >= b_2(a).
bool hypergeometric_eliminates(const Integer& a, const Integer& b,
                               mpfr_prec_t prec = kDefaultPrecision,
                               mpfr_prec_t cap = kPrecisionCap);

/// The reduced large-a form: true iff
/// 14.95 a < log(6.21e34 a^6 (a+1)^6) log(42992 a^5 (a+1)^3)
///           / (log(32 a^2) log(3.78 a^2))
/// FAILS (certified), eliminating every b >= b_2(a) at once.
bool large_a_eliminated(const Integer& a,
                        mpfr_prec_t prec = kDefaultPrecision,
                        mpfr_prec_t cap = kPrecisionCap);

/// Smallest integer M such that m / log(m+1) < 6.543e15 log^2 b forces
/// m < M, found by certified bisection (the predicate is monotone).
Integer sextuple_m_bound(const Integer& b,
                         mpfr_prec_t prec = kDefaultPrecision,
                         mpfr_prec_t cap = kPrecisionCap);

/// log alpha, log beta, log gamma for a pair context:
/// alpha = (s + sqrt(ab))/2, beta = (t + sqrt((a+1)b))/2,
/// gamma = sqrt(a+1)(sqrt(b) + e sqrt(a)) / (sqrt(a)(sqrt(b) + e sqrt(a+1))).
struct ContextLogs {
  CertifiedReal log_alpha, log_beta, log_gamma;
};
ContextLogs context_logs(const PairContext& ctx,
                         mpfr_prec_t prec = kDefaultPrecision);

CertifiedReal alpha_of(const PairContext& ctx,
                       mpfr_prec_t prec = kDefaultPrecision);

/// Lambda = m log alpha - n log beta + log gamma.
CertifiedReal linear_form(const PairContext& ctx, std::size_t m, std::size_t n,
                          mpfr_prec_t prec = kDefaultPrecision);

/// Lambda plus the certified checks of 0 < Lambda < alpha^{1-2m}.
struct LinearFormCheck {
  CertifiedReal lambda_value;
  bool positive = false;
  bool below_alpha_power = false;
};
LinearFormCheck linear_form_checked(const PairContext& ctx, std::size_t m,
                                    std::size_t n,
                                    mpfr_prec_t prec = kDefaultPrecision,
                                    mpfr_prec_t cap = kPrecisionCap);

/// Two-logarithm lower-bound parameters, instantiated for the b = b_1 case:
/// D = 4, log A1 = (log alpha + log beta)/2, log A2 = 1.16 (nu/2 + 1) log alpha,
/// b' = n/(D log A2) + 1/(D log A1).
struct LMParams {
  unsigned degree = 4;
  CertifiedReal log_A1, log_A2, b_prime;
};
LMParams lm_params_b1(const PairContext& ctx, unsigned nu,
                      const Integer& n_coeff,
                      mpfr_prec_t prec = kDefaultPrecision);

/// log Lambda > -24.34 D^4 (max{log b' + 0.14, 21/D, 1/2})^2 log A1 log A2.
CertifiedReal lm_lower_bound(const LMParams& params,
                             mpfr_prec_t prec = kDefaultPrecision);

/// m < 18067.6 (nu + 2) log alpha, with b = b_1(a) (reference constant).
CertifiedReal b1_case_m_upper(const Integer& a, unsigned nu,
                              mpfr_prec_t prec = kDefaultPrecision);

/// The independently derived (larger, safe) version of the same bound, via
/// certified bisection of x < 1132 (max{log x, 5.25})^2; campaigns use this.
CertifiedReal b1_case_m_upper_derived(const Integer& a, unsigned nu,
                                      mpfr_prec_t prec = kDefaultPrecision);

/// Largest integer x with x < 1132 (max{log x, 5.25})^2 (cached).
const Integer& index_bound_threshold();

/// a < 9033.8 (nu + 2) / (nu - 0.0005).
CertifiedReal b1_case_a_upper(unsigned nu,
                              mpfr_prec_t prec = kDefaultPrecision);

/// n > 2 (nu - 0.0005) a log alpha, with b = b_1(a).
CertifiedReal b1_case_n_lower(const Integer& a, unsigned nu,
                              mpfr_prec_t prec = kDefaultPrecision);

/// (m - 0.0005) log alpha - n log beta (negative for genuine solutions).
CertifiedReal index_shift_form(const PairContext& ctx, std::size_t m,
                               std::size_t n,
                               mpfr_prec_t prec = kDefaultPrecision);

/// Serialization record for a bound evaluation.
struct BoundReport {
  std::string name;
  std::string inputs;
  std::string enclosure_lo;
  std::string enclosure_hi;
  std::string verdict;
};
std::string to_json(const BoundReport& report);
BoundReport make_report(const std::string& name, const std::string& inputs,
                        const CertifiedReal& value, const std::string& verdict);

}  // namespace d4
