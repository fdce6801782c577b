#include "d4tuples/bounds.hpp"

#include <mutex>
#include <sstream>

#include "d4tuples/errors.hpp"

namespace d4 {

namespace {

CertifiedReal dec(const char* text, mpfr_prec_t prec) {
  return CertifiedReal::from_decimal(text, prec);
}

CertifiedReal exact_log(const Integer& n, mpfr_prec_t prec) {
  return CertifiedReal::exact(n, prec).log();
}

CertifiedReal rational_log(const Rational& q, mpfr_prec_t prec) {
  return CertifiedReal::from_rational(q, prec).log();
}

Integer b1_of(const Integer& a) { return 64 * a + 32; }

Integer b2_of(const Integer& a) {
  return ((1024 * a + 1536) * a + 704) * a + 96;
}

PairContext b1_context(const Integer& a) {
  return PairContext::make(a, b1_of(a), 1);
}

}  // namespace

CertifiedReal m_lower_bound(const Integer& a, const Integer& b,
                            mpfr_prec_t prec, bool enforce_hypothesis) {
  if (sgn(a) <= 0) throw DomainError("m_lower_bound: a must be >= 1");
  if (enforce_hypothesis && b < b1_of(a))
    throw DomainError("m_lower_bound: hypothesis needs b >= 64a + 32");
  CertifiedReal c = dec("0.4672", prec);
  CertifiedReal root_b = CertifiedReal::exact(b, prec).sqrt();
  CertifiedReal root_a1 = CertifiedReal::exact(a + 1, prec).sqrt();
  return c * root_b / root_a1;
}

RickertParams rickert_lambda(const Integer& a, const Integer& N,
                             mpfr_prec_t prec) {
  if (sgn(a) <= 0) throw DomainError("rickert_lambda: a must be >= 1");
  Integer aa1 = a * (a + 1);
  if (N % aa1 != 0)
    throw DomainError("rickert_lambda: N must be a multiple of a(a+1)");
  if (N < 270 * a * (a + 1) * (a + 1))
    throw DomainError("rickert_lambda: N below 270 a (a+1)^2");

  CertifiedReal num = exact_log(11 * (a + 1) * N, prec);
  // 0.041 N^2 / (a(a+1)) as an exact rational
  Rational denom_arg(41 * N * N, 1000 * aa1);
  denom_arg.canonicalize();
  CertifiedReal den = rational_log(denom_arg, prec);
  if (den.sign() != Sign::positive)
    throw DomainError("rickert_lambda: approximation base not certifiable");
  RickertParams params{a, N, CertifiedReal::exact(1L, prec) + num / den,
                       Integer()};
  Rational measure = rational_from_decimal("2.96e28");
  params.inverse_measure = measure.get_num() * N * (a + 1);
  auto below_two = params.lambda.certified_less(CertifiedReal::exact(2L, prec));
  if (!below_two.has_value())
    throw PrecisionError("rickert_lambda: lambda < 2 undecided");
  if (!*below_two)
    throw DomainError("rickert_lambda: lambda >= 2 despite hypothesis");
  return params;
}

ThetaQuality theta_approximation_quality(const Integer& a, const Integer& b,
                                         const Integer& x, const Integer& y,
                                         const Integer& z, mpfr_prec_t prec) {
  if (sgn(x) <= 0 || sgn(y) <= 0 || sgn(z) <= 0)
    throw DomainError("theta_approximation_quality: need positive x, y, z");
  if (z <= 2)
    throw DomainError(
        "theta_approximation_quality: z = 2 is the degenerate c = 0 point");
  if (a * z * z - b * x * x != 4 * (a - b) ||
      (a + 1) * z * z - b * y * y != 4 * (a + 1 - b))
    throw DomainError(
        "theta_approximation_quality: (x, y, z) does not solve the system");
  PairContext ctx = PairContext::make(a, b, 1);
  const Integer N = a * (a + 1) * b;

  Rational t1_arg(N + 4 * a, N), t2_arg(N + 4 * (a + 1), N);
  t1_arg.canonicalize();
  t2_arg.canonicalize();
  CertifiedReal theta1 = CertifiedReal::from_rational(t1_arg, prec).sqrt();
  CertifiedReal theta2 = CertifiedReal::from_rational(t2_arg, prec).sqrt();

  const Integer q = a * (a + 1) * z;
  Rational p1(a * ctx.t * y, q), p2((a + 1) * ctx.s * x, q);
  p1.canonicalize();
  p2.canonicalize();
  CertifiedReal e1 = (theta1 - CertifiedReal::from_rational(p1, prec)).abs();
  CertifiedReal e2 = (theta2 - CertifiedReal::from_rational(p2, prec)).abs();

  ThetaQuality quality{certified_max(e1, e2), CertifiedReal(prec), false};
  Rational allow(2 * b, a * z * z);
  allow.canonicalize();
  quality.allowance = CertifiedReal::from_rational(allow, prec);
  auto within = quality.max_error.certified_less(quality.allowance);
  quality.certified_within = within.has_value() && *within;
  return quality;
}

std::optional<CertifiedReal> z_log_upper_bound(const Integer& a,
                                               const Integer& b,
                                               mpfr_prec_t prec) {
  if (sgn(a) <= 0 || sgn(b) <= 0)
    throw DomainError("z_log_upper_bound: a, b must be positive");
  Rational gate(37 * b, 10000 * (a + 1));
  gate.canonicalize();
  if (gate <= 1) return std::nullopt;  // vacuous bound

  Integer a1 = a + 1;
  Rational big = rational_from_decimal("5.92e28");
  Rational num1_arg = big * Rational(a * a * a1 * a1 * a1 * a1 * b * b);
  num1_arg.canonicalize();
  Rational num2_arg(41 * a * a1 * b * b, 1000);
  num2_arg.canonicalize();
  CertifiedReal value = rational_log(num1_arg, prec) *
                        rational_log(num2_arg, prec) /
                        rational_log(gate, prec);
  return value;
}

namespace {

// Right-hand side of the combined elimination inequality at precision p.
CertifiedReal elimination_rhs(const Integer& a, const Integer& b,
                              mpfr_prec_t p) {
  auto bound = z_log_upper_bound(a, b, p);
  if (!bound)
    throw DomainError("hypergeometric_eliminates: vacuous z bound");
  PairContext ctx = PairContext::make(a, b, 1);
  CertifiedReal log_alpha = alpha_of(ctx, p).log();
  return *bound / log_alpha;
}

}  // namespace

bool hypergeometric_eliminates(const Integer& a, const Integer& b,
                               mpfr_prec_t prec, mpfr_prec_t cap) {
  if (b < b2_of(a))
    throw DomainError("hypergeometric_eliminates: needs b >= b_2(a)");
  // Eliminated iff the inequality lower-bound < rhs FAILS.
  return !certified_less_escalating(
      [&](mpfr_prec_t p) { return m_lower_bound(a, b, p); },
      [&](mpfr_prec_t p) { return elimination_rhs(a, b, p); }, prec, cap);
}

bool large_a_eliminated(const Integer& a, mpfr_prec_t prec, mpfr_prec_t cap) {
  if (sgn(a) <= 0) throw DomainError("large_a_eliminated: a must be >= 1");
  Integer a1 = a + 1;
  Integer a6 = a * a * a * a * a * a;
  Integer a16 = a1 * a1 * a1 * a1 * a1 * a1;
  Rational r1 = rational_from_decimal("6.21e34") * Rational(a6 * a16);
  r1.canonicalize();
  Integer a5 = a * a * a * a * a;
  Integer a13 = a1 * a1 * a1;
  Rational r2(42992 * a5 * a13);
  Rational r3(32 * a * a);
  Rational r4 = rational_from_decimal("3.78") * Rational(a * a);
  r4.canonicalize();

  auto lhs = [&](mpfr_prec_t p) {
    return dec("14.95", p) * CertifiedReal::exact(a, p);
  };
  auto rhs = [&](mpfr_prec_t p) {
    return rational_log(r1, p) * rational_log(r2, p) /
           (rational_log(r3, p) * rational_log(r4, p));
  };
  return !certified_less_escalating(lhs, rhs, prec, cap);
}

Integer sextuple_m_bound(const Integer& b, mpfr_prec_t prec,
                         mpfr_prec_t cap) {
  if (b < 96) throw DomainError("sextuple_m_bound: needs b >= 96");
  auto holds = [&](const Integer& m) {
    // m / log(m+1) < 6.543e15 log^2 b
    return certified_less_escalating(
        [&](mpfr_prec_t p) { return CertifiedReal::exact(m, p); },
        [&](mpfr_prec_t p) {
          CertifiedReal log_b = exact_log(b, p);
          return dec("6.543e15", p) * log_b * log_b * exact_log(m + 1, p);
        },
        prec, cap);
  };
  Integer hi(2);
  while (holds(hi)) hi *= 2;
  Integer lo = hi / 2;  // holds(lo), !holds(hi)
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    if (holds(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo + 1;
}

CertifiedReal alpha_of(const PairContext& ctx, mpfr_prec_t prec) {
  CertifiedReal half = CertifiedReal::from_rational(Rational(1, 2), prec);
  return (CertifiedReal::exact(ctx.s, prec) +
          CertifiedReal::exact(ctx.a * ctx.b, prec).sqrt()) *
         half;
}

ContextLogs context_logs(const PairContext& ctx, mpfr_prec_t prec) {
  CertifiedReal half = CertifiedReal::from_rational(Rational(1, 2), prec);
  CertifiedReal beta = (CertifiedReal::exact(ctx.t, prec) +
                        CertifiedReal::exact((ctx.a + 1) * ctx.b, prec).sqrt()) *
                       half;
  CertifiedReal sqrt_a = CertifiedReal::exact(ctx.a, prec).sqrt();
  CertifiedReal sqrt_a1 = CertifiedReal::exact(ctx.a + 1, prec).sqrt();
  CertifiedReal sqrt_b = CertifiedReal::exact(ctx.b, prec).sqrt();
  CertifiedReal eps = CertifiedReal::exact(long(ctx.epsilon), prec);
  CertifiedReal gamma = (sqrt_a1 * (sqrt_b + eps * sqrt_a)) /
                        (sqrt_a * (sqrt_b + eps * sqrt_a1));
  return ContextLogs{alpha_of(ctx, prec).log(), beta.log(), gamma.log()};
}

CertifiedReal linear_form(const PairContext& ctx, std::size_t m, std::size_t n,
                          mpfr_prec_t prec) {
  ContextLogs logs = context_logs(ctx, prec);
  return CertifiedReal::exact(long(m), prec) * logs.log_alpha -
         CertifiedReal::exact(long(n), prec) * logs.log_beta + logs.log_gamma;
}

LinearFormCheck linear_form_checked(const PairContext& ctx, std::size_t m,
                                    std::size_t n, mpfr_prec_t prec,
                                    mpfr_prec_t cap) {
  LinearFormCheck check{linear_form(ctx, m, n, prec), false, false};
  Sign sign = certified_sign(
      [&](mpfr_prec_t p) { return linear_form(ctx, m, n, p); }, prec, cap);
  check.positive = sign == Sign::positive;
  if (m >= 1) {
    // Lambda < alpha^{1-2m}, i.e. Lambda * alpha^{2m-1} < 1
    check.below_alpha_power = certified_less_escalating(
        [&](mpfr_prec_t p) {
          return linear_form(ctx, m, n, p) * alpha_of(ctx, p).pow(2 * m - 1);
        },
        [&](mpfr_prec_t p) { return CertifiedReal::exact(1L, p); }, prec, cap);
  }
  return check;
}

LMParams lm_params_b1(const PairContext& ctx, unsigned nu,
                      const Integer& n_coeff, mpfr_prec_t prec) {
  if (nu < 2 || nu % 2 != 0)
    throw DomainError("lm_params_b1: nu must be even and >= 2");
  if (ctx.b != b1_of(ctx.a))
    throw DomainError("lm_params_b1: context must have b = b_1(a)");
  ContextLogs logs = context_logs(ctx, prec);
  CertifiedReal half = CertifiedReal::from_rational(Rational(1, 2), prec);
  LMParams params;
  params.degree = 4;
  params.log_A1 = (logs.log_alpha + logs.log_beta) * half;
  // 1.16 (nu/2 + 1) = 29 (nu + 2) / 50
  params.log_A2 =
      CertifiedReal::from_rational(Rational(29 * (nu + 2), 50), prec) *
      logs.log_alpha;
  CertifiedReal four = CertifiedReal::exact(4L, prec);
  params.b_prime =
      CertifiedReal::exact(n_coeff, prec) / (four * params.log_A2) +
      CertifiedReal::exact(1L, prec) / (four * params.log_A1);
  return params;
}

CertifiedReal lm_lower_bound(const LMParams& params, mpfr_prec_t prec) {
  if (params.degree != 4)
    throw DomainError("lm_lower_bound: only degree 4 is instantiated");
  auto check_height = [&](const CertifiedReal& log_A) {
    auto ok = CertifiedReal::from_rational(Rational(1, 4), prec)
                  .certified_less(log_A);
    if (!ok.has_value() || !*ok)
      throw DomainError("lm_lower_bound: log A below the height floor 1/D");
  };
  check_height(params.log_A1);
  check_height(params.log_A2);
  CertifiedReal branch = params.b_prime.log() + dec("0.14", prec);
  CertifiedReal m1 = certified_max(
      branch, CertifiedReal::from_rational(Rational(21, 4), prec));
  CertifiedReal m2 =
      certified_max(m1, CertifiedReal::from_rational(Rational(1, 2), prec));
  return -(dec("24.34", prec) * CertifiedReal::exact(256L, prec) * m2 * m2 *
           params.log_A1 * params.log_A2);
}

CertifiedReal b1_case_m_upper(const Integer& a, unsigned nu,
                              mpfr_prec_t prec) {
  if (nu < 2) throw DomainError("b1_case_m_upper: nu = m - n is >= 2");
  ContextLogs logs = context_logs(b1_context(a), prec);
  return dec("18067.6", prec) *
         CertifiedReal::exact(long(nu) + 2, prec) * logs.log_alpha;
}

const Integer& index_bound_threshold() {
  static Integer threshold = [] {
    // Largest integer x with x < 1132 (max{log x, 5.25})^2. The quadratic
    // branch dominates well before the crossing, so bisection on the plain
    // log^2 form is enough once lo is past e^5.25.
    auto holds = [](const Integer& x) {
      return certified_less_escalating(
          [&](mpfr_prec_t p) { return CertifiedReal::exact(x, p); },
          [&](mpfr_prec_t p) {
            CertifiedReal lx = exact_log(x, p);
            CertifiedReal m =
                certified_max(lx, CertifiedReal::from_rational(
                                      Rational(21, 4), p));
            return CertifiedReal::exact(1132L, p) * m * m;
          });
    };
    Integer hi(1024);
    while (holds(hi)) hi *= 2;
    Integer lo = hi / 2;
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      if (holds(mid))
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  }();
  return threshold;
}

CertifiedReal b1_case_m_upper_derived(const Integer& a, unsigned nu,
                                      mpfr_prec_t prec) {
  if (nu < 2) throw DomainError("b1_case_m_upper_derived: nu is >= 2");
  ContextLogs logs = context_logs(b1_context(a), prec);
  // x < threshold + 1 plus slack for the -0.58/(2(nu+2) log alpha) shift,
  // converted by m = x * 2 (nu+2) log(alpha) / 1.16 = x * 50/29 (nu+2) log a.
  Rational coeff(50 * (index_bound_threshold() + 2), 29);
  coeff.canonicalize();
  return CertifiedReal::from_rational(coeff, prec) *
         CertifiedReal::exact(long(nu) + 2, prec) * logs.log_alpha;
}

CertifiedReal b1_case_a_upper(unsigned nu, mpfr_prec_t prec) {
  if (nu < 2) throw DomainError("b1_case_a_upper: nu must be >= 2");
  CertifiedReal nu_real = CertifiedReal::exact(long(nu), prec);
  return dec("9033.8", prec) *
         (nu_real + CertifiedReal::exact(2L, prec)) /
         (nu_real - dec("0.0005", prec));
}

CertifiedReal b1_case_n_lower(const Integer& a, unsigned nu,
                              mpfr_prec_t prec) {
  if (nu < 2) throw DomainError("b1_case_n_lower: nu is >= 2");
  ContextLogs logs = context_logs(b1_context(a), prec);
  return CertifiedReal::exact(2L, prec) *
         (CertifiedReal::exact(long(nu), prec) - dec("0.0005", prec)) *
         CertifiedReal::exact(a, prec) * logs.log_alpha;
}

CertifiedReal index_shift_form(const PairContext& ctx, std::size_t m,
                               std::size_t n, mpfr_prec_t prec) {
  ContextLogs logs = context_logs(ctx, prec);
  return (CertifiedReal::exact(long(m), prec) - dec("0.0005", prec)) *
             logs.log_alpha -
         CertifiedReal::exact(long(n), prec) * logs.log_beta;
}

std::string to_json(const BoundReport& report) {
  std::ostringstream os;
  os << "{\"name\": \"" << report.name << "\", \"inputs\": \"" << report.inputs
     << "\", \"enclosure_lo\": \"" << report.enclosure_lo
     << "\", \"enclosure_hi\": \"" << report.enclosure_hi
     << "\", \"verdict\": \"" << report.verdict << "\"}";
  return os.str();
}

BoundReport make_report(const std::string& name, const std::string& inputs,
                        const CertifiedReal& value,
                        const std::string& verdict) {
  return BoundReport{name, inputs, value.lower_string(), value.upper_string(),
                     verdict};
}

}  // namespace d4
