#include "d4tuples/reduction.hpp"

#include <algorithm>
#include <sstream>

#include "d4tuples/bounds.hpp"
#include "d4tuples/continued_fraction.hpp"
#include "d4tuples/errors.hpp"

namespace d4 {

namespace {

constexpr std::size_t kMaxConvergentDepth = 4000;

}  // namespace

ReductionInstance build_instance(const Integer& a, const Integer& b,
                                 int epsilon, const Integer& M,
                                 mpfr_prec_t precision) {
  if (M < 1) throw DomainError("build_instance: M must be >= 1");
  if (precision == 0) {
    const auto m_bits =
        static_cast<mpfr_prec_t>(mpz_sizeinbase(M.get_mpz_t(), 2));
    precision = std::max<mpfr_prec_t>(kDefaultPrecision, 2 * m_bits + 64);
  }
  PairContext ctx = PairContext::make(a, b, epsilon);
  ContextLogs logs = context_logs(ctx, precision);
  CertifiedReal alpha = alpha_of(ctx, precision);

  ReductionInstance inst;
  inst.a = a;
  inst.b = b;
  inst.epsilon = epsilon;
  inst.kappa = logs.log_alpha / logs.log_beta;
  inst.mu = logs.log_gamma / logs.log_beta;
  inst.A = alpha / logs.log_beta;
  inst.B = alpha * alpha;
  inst.M = M;
  inst.precision = precision;
  return inst;
}

BdStepOutcome bd_step(const ReductionInstance& inst, int extra_convergents) {
  const Integer threshold = 6 * inst.M;

  // Grow the certified convergent list until q > 6M (or certification or
  // depth runs out).
  std::size_t depth = 64;
  ContinuedFraction cf = continued_fraction_prefix(inst.kappa, depth);
  auto q_exceeds = [&](std::size_t i) {
    return cf.convergents[i].second > threshold;
  };
  std::size_t first = cf.convergents.size();
  for (;;) {
    first = cf.convergents.size();
    for (std::size_t i = 0; i < cf.convergents.size(); ++i) {
      if (q_exceeds(i)) {
        first = i;
        break;
      }
    }
    if (first < cf.convergents.size()) break;
    if (cf.partial_quotients.size() < depth) {
      // certification ran out before the threshold: caller must escalate
      BdStepOutcome out;
      out.convergents_tried = 0;
      return out;
    }
    if (depth >= kMaxConvergentDepth)
      throw ResourceError("bd_step: continued fraction depth exhausted");
    depth *= 2;
    cf = continued_fraction_prefix(inst.kappa, depth);
  }

  BdStepOutcome out;
  const CertifiedReal M_real =
      CertifiedReal::exact(inst.M, inst.precision);
  for (int attempt = 0; attempt <= extra_convergents; ++attempt) {
    std::size_t idx = first + static_cast<std::size_t>(attempt);
    if (idx >= cf.convergents.size()) {
      if (cf.partial_quotients.size() < depth) break;  // no more certified
      if (depth >= kMaxConvergentDepth) break;
      depth *= 2;
      cf = continued_fraction_prefix(inst.kappa, depth);
      if (idx >= cf.convergents.size()) break;
    }
    const Integer& q = cf.convergents[idx].second;
    CertifiedReal q_real = CertifiedReal::exact(q, inst.precision);
    CertifiedReal d_kappa = distance_to_nearest_integer(inst.kappa * q_real);
    CertifiedReal d_mu = distance_to_nearest_integer(inst.mu * q_real);
    CertifiedReal eps0 = d_mu - M_real * d_kappa;

    out.q = q;
    out.eps0 = eps0;
    out.convergents_tried = attempt + 1;
    if (eps0.sign() == Sign::positive) {
      // no solution with log(A q / eps0)/log B <= m <= M
      CertifiedReal bound = (inst.A * q_real / eps0).log() / inst.B.log();
      Integer new_M = bound.floor_upper();
      if (new_M < 1) new_M = 1;
      out.success = true;
      out.new_M = new_M;
      return out;
    }
  }
  return out;  // success = false; caller escalates precision
}

ReductionTranscript reduce_pair(const Integer& a, const Integer& b,
                                const Integer& M0, int max_steps,
                                mpfr_prec_t precision, mpfr_prec_t cap) {
  if (M0 < 1) throw DomainError("reduce_pair: M0 must be >= 1");
  if (max_steps < 1) throw DomainError("reduce_pair: max_steps must be >= 1");

  ReductionTranscript transcript;
  transcript.a = a;
  transcript.b = b;
  transcript.initial_M = M0;
  transcript.final_M = M0;
  transcript.precision_used = precision;

  Integer M = M0;
  for (int round = 1; round <= max_steps; ++round) {
    Integer round_bound(0);
    for (int epsilon : {+1, -1}) {
      BdStepOutcome outcome;
      mpfr_prec_t p = precision;
      for (;;) {
        ReductionInstance inst = build_instance(a, b, epsilon, M, p);
        p = inst.precision;  // auto floor may raise it
        transcript.precision_used = std::max(transcript.precision_used, p);
        outcome = bd_step(inst);
        if (outcome.success) break;
        if (p >= cap) {
          transcript.resolved = false;
          transcript.failure_reason =
              "epsilon=" + std::to_string(epsilon) +
              " round=" + std::to_string(round) +
              ": eps0 not certifiably positive at precision cap";
          transcript.final_M = M;
          return transcript;
        }
        p *= 2;
      }
      ReductionStepRecord record;
      record.round = round;
      record.epsilon = epsilon;
      record.q = outcome.q;
      record.eps0_lo = outcome.eps0.lower_double();
      record.eps0_hi = outcome.eps0.upper_double();
      record.new_M = outcome.new_M;
      record.precision_bits = p;
      transcript.steps.push_back(std::move(record));
      round_bound = std::max(round_bound, outcome.new_M);
    }
    transcript.rounds = round;
    if (round_bound >= M) break;  // stabilized
    M = round_bound;
    if (M <= 1) break;
  }
  transcript.final_M = M;
  transcript.resolved = true;
  return transcript;
}

std::vector<IntersectionHit> brute_force_oracle(const Integer& a,
                                                const Integer& b,
                                                const Integer& M) {
  if (M > 10000)
    throw DomainError("brute_force_oracle: M above 10^4 (value growth)");
  if (M < 2) return {};
  return find_intersections(a, b, M.get_ui());
}

std::string to_json(const ReductionStepRecord& record, const Integer& a,
                    const Integer& b) {
  std::ostringstream os;
  os << "{\"a\": " << a.get_str() << ", \"b\": " << b.get_str()
     << ", \"epsilon\": " << record.epsilon << ", \"step\": " << record.round
     << ", \"q\": \"" << record.q.get_str() << "\", \"eps0_lo\": "
     << record.eps0_lo << ", \"eps0_hi\": " << record.eps0_hi
     << ", \"new_M\": \"" << record.new_M.get_str()
     << "\", \"precision_bits\": " << record.precision_bits << "}";
  return os.str();
}

}  // namespace d4
