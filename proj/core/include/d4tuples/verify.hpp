#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "d4tuples/integer.hpp"
#include "d4tuples/pell.hpp"
#include "d4tuples/real.hpp"
#include "d4tuples/reduction.hpp"

namespace d4 {

enum class Verdict {
  eliminated_hypergeometric,
  reduced,
  solution_found,
  skipped_known_family,
  unresolved,
};
std::string to_string(Verdict verdict);

struct CaseResult {
  std::string key;
  Integer a, b;
  Verdict verdict = Verdict::unresolved;
  Integer final_M;
  int steps = 0;
  mpfr_prec_t precision_bits = 0;
  long long wall_ms = 0;
  std::string detail;
  std::vector<IntersectionHit> solutions;
};
std::string to_json(const CaseResult& result);
CaseResult case_result_from_json(const std::string& line);

struct CampaignOptions {
  mpfr_prec_t precision = kDefaultPrecision;
  mpfr_prec_t precision_cap = kPrecisionCap;
  unsigned workers = 1;
  int max_steps = 5;
};

struct CampaignOutcome {
  std::vector<CaseResult> results;
  int exit_status = 0;  // 0 all closed, 2 unresolved, 3 counterexample
};

/// The five pairs (a, b_2(a)), a <= 5: hypergeometric survival at b_2,
/// elimination at b_3, the large-a contradiction at a = 6, then reduction of
/// each pair below both 7 and the index floor.
CampaignOutcome campaign_b2(const CampaignOptions& options = {});

/// The pairs (a, b_1(a)) for a in [1, a_max] \ {3}: reduction from the
/// derived two-logarithm bound down to final_M <= 1 in <= 3 rounds.
CampaignOutcome campaign_b1(long a_max, const CampaignOptions& options = {});
CaseResult campaign_b1_case(long a, const CampaignOptions& options = {});

/// The regularity identities for two triples {a1, b, c}, {a2, b, c} with
/// a1 < a2 < b < c and c < 0.25 b^3.
struct RegularityReport {
  Integer a1, a2, b, c;
  Integer d1, d2;
  Integer t1, t2;  // t_i^2 = a_i d_i + 4
  bool relation1 = false, relation2 = false;  // identity (b+c-a_i-d_i)^2 = ...
  bool cross_identity = false;                // d1 == a2 and d2 == a1
  bool quadruple_ok = false;                  // {a1, a2, b, c} is a quadruple
  Rational lambda1_indexed, lambda2_indexed;  // c = a_i b d_i + lambda max{..}
  Rational lambda1_common, lambda2_common;    // same with a = a1 in both
  bool lambda_indexed_in_range = false;       // 1 < lambda < 4, both i
  bool lambda_common_in_range = false;
  bool all_ok = false;
};
RegularityReport theorem15_identity_check(const Integer& a1, const Integer& a2,
                                          const Integer& b, const Integer& c);

struct ConjectureViolation {
  Integer a1, a2, b, c;
  bool regular_stratum = false;  // c < 0.25 b^3
};

struct ConjectureScanReport {
  unsigned long long limit = 0;
  std::size_t base_pairs = 0;           // (b, c) D(4)-pairs scanned
  std::size_t triple_configs = 0;       // (a1, a2, b, c) candidates tested
  std::size_t quadruples_confirmed = 0;
  std::size_t regular_violations = 0;
  std::size_t conjectural_violations = 0;
  bool example_3_4_15_224 = false;
  std::vector<ConjectureViolation> violations;
};
ConjectureScanReport conjecture1_scan(unsigned long long limit,
                                      unsigned workers = 1);

/// Same scan restricted to the regular stratum, running the full identity
/// report on every configuration; any failed report is a violation.
struct IdentityScanReport {
  unsigned long long limit = 0;
  std::size_t configs_checked = 0;
  std::size_t failures = 0;
  std::vector<ConjectureViolation> failed_configs;
};
IdentityScanReport theorem15_scan(unsigned long long limit,
                                  unsigned workers = 1);

/// Bounds-independent spot check: (a, b_1(a)) and (a, b_2(a)) for a != 3
/// must have no intersection with m <= m_max; the a = 3 witness context
/// (3, 15) must contain the known solution family.
struct SpotcheckReport {
  long a_max = 0;
  std::size_t m_max = 0;
  std::size_t contexts_checked = 0;
  bool a3_family_found = false;
  bool clean = false;  // no unexpected hits anywhere
  std::vector<CaseResult> unexpected;
};
SpotcheckReport theorem_ap1_spotcheck(long a_max, std::size_t m_max,
                                      unsigned workers = 1);

/// The inequality chain behind relation (21): given the hypothesis
/// 2 t1 < 4 d1 / b + 1 on a pair witness t1^2 = a1 d1 + 4, certifies
/// d1 > b (a1 b - 1)/4 and c_plus(a1, b, d1) > a1^2 b^3 / 4 + 3b/4.
struct Ineq21Chain {
  bool hypothesis_holds = false;
  bool t1_at_least_half_ab = false;
  bool d1_lower_ok = false;
  bool c_lower_ok = false;
  Integer c_plus;
};
Ineq21Chain inequality21_chain_check(const Integer& a1, const Integer& b,
                                     const Integer& d1);

/// A named campaign run with reports, checkpoint/resume and exit status.
struct CampaignSpec {
  std::string name;  // b1 | b2 | conjecture1 | theorem15 | spotcheck
  long a_min = 1;
  long a_max = 500;
  unsigned long long limit = 10000;  // scan campaigns
  std::size_t m_max = 200;           // spotcheck
  int max_steps = 5;
  mpfr_prec_t precision = kDefaultPrecision;
  mpfr_prec_t precision_cap = kPrecisionCap;
  unsigned workers = 1;
  std::string output_dir = "d4-reports";
  bool resume = false;
};

/// Executes the campaign; writes <name>.jsonl, <name>.csv and
/// <name>.summary.json under output_dir plus per-key checkpoint files.
/// Returns 0 (closed), 2 (unresolved cases) or 3 (counterexample found).
int run_campaign(const CampaignSpec& spec);

}  // namespace d4
