#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "d4tuples/integer.hpp"
#include "d4tuples/pell.hpp"
#include "d4tuples/real.hpp"

namespace d4 {

/// One normalized reduction problem: 0 < m kappa - n + mu < A B^{-m} with
/// kappa = log alpha / log beta, mu = log gamma / log beta, A = alpha/log beta,
/// B = alpha^2, and M the current upper bound on m.
struct ReductionInstance {
  Integer a, b;
  int epsilon = 1;
  CertifiedReal kappa, mu, A, B;
  Integer M;
  mpfr_prec_t precision = kDefaultPrecision;
};

/// Builds the instance at working precision >= 2 log2(M) + 64 bits.
/// precision = 0 selects that automatically. Throws DomainError for M < 1.
ReductionInstance build_instance(const Integer& a, const Integer& b,
                                 int epsilon, const Integer& M,
                                 mpfr_prec_t precision = 0);

/// One reduction step: the first convergent denominator q of kappa with
/// q > 6M (advancing up to extra_convergents further while
/// eps0 = ||mu q|| - M ||kappa q|| fails to certify positive). On success
/// the new bound is floor(log(A q / eps0) / log B), clamped to >= 1.
struct BdStepOutcome {
  bool success = false;
  Integer q;           // last convergent denominator tried
  CertifiedReal eps0;  // its eps0 enclosure
  Integer new_M;       // valid iff success
  int convergents_tried = 0;
};
BdStepOutcome bd_step(const ReductionInstance& inst, int extra_convergents = 10);

struct ReductionStepRecord {
  int round = 0;
  int epsilon = 1;
  Integer q;
  double eps0_lo = 0.0, eps0_hi = 0.0;
  Integer new_M;
  mpfr_prec_t precision_bits = 0;
};

struct ReductionTranscript {
  Integer a, b;
  Integer initial_M, final_M;
  bool resolved = false;  // every attempted round produced a certified step
  int rounds = 0;
  mpfr_prec_t precision_used = 0;
  std::vector<ReductionStepRecord> steps;
  std::string failure_reason;
};

/// Runs rounds of bd_step over both epsilon branches, taking the max of the
/// two branch bounds each round, until the bound stabilizes, drops to <= 1,
/// or max_steps rounds pass. Escalates precision (doubling, up to cap) when
/// a branch cannot certify a step; an unresolved branch is reported, never
/// silently passed.
ReductionTranscript reduce_pair(const Integer& a, const Integer& b,
                                const Integer& M0, int max_steps,
                                mpfr_prec_t precision = kDefaultPrecision,
                                mpfr_prec_t cap = kPrecisionCap);

/// Independent exhaustive check below an index bound M (<= 10^4): the
/// two-pointer merge scan itself.
std::vector<IntersectionHit> brute_force_oracle(const Integer& a,
                                                const Integer& b,
                                                const Integer& M);

/// JSON line {a, b, epsilon, step, q, eps0_lo, eps0_hi, new_M, precision_bits}.
std::string to_json(const ReductionStepRecord& record, const Integer& a,
                    const Integer& b);

}  // namespace d4
