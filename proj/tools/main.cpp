// Command-line surface for the D(4)-tuple verification toolkit.
//
// Exit codes: 0 success / affirmative verdict, 1 negative verdict,
// 2 unresolved cases, 3 counterexample found, 64 usage error,
// 65 domain/data error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "d4tuples/bounds.hpp"
#include "d4tuples/errors.hpp"
#include "d4tuples/pell.hpp"
#include "d4tuples/reduction.hpp"
#include "d4tuples/tuples.hpp"
#include "d4tuples/verify.hpp"

namespace {

using d4::Integer;
using nlohmann::json;

constexpr int kExitNo = 1;
constexpr int kExitUnresolved = 2;
constexpr int kExitCounterexample = 3;
constexpr int kExitUsage = 64;
constexpr int kExitDomain = 65;

struct GlobalConfig {
  long precision = d4::kDefaultPrecision;
  long precision_cap = d4::kPrecisionCap;
  unsigned workers = 1;
  std::string format = "text";
  std::string output_dir = "d4-reports";
};

Integer parse_integer(const std::string& text) {
  return d4::integer_from_decimal(text);
}

int cmd_check(const std::vector<std::string>& raw, const GlobalConfig& cfg) {
  std::vector<Integer> xs;
  xs.reserve(raw.size());
  for (const auto& s : raw) xs.push_back(parse_integer(s));
  bool all = true;
  json pairs = json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      auto w = d4::is_d4_pair(std::min(xs[i], xs[j]), std::max(xs[i], xs[j]));
      all = all && w.has_value();
      if (cfg.format == "json") {
        json p;
        p["x"] = xs[i].get_str();
        p["y"] = xs[j].get_str();
        p["witness"] = w ? json(w->get_str()) : json(nullptr);
        pairs.push_back(p);
      } else {
        std::cout << xs[i].get_str() << " * " << xs[j].get_str() << " + 4 = "
                  << Integer(xs[i] * xs[j] + 4).get_str() << "  ->  "
                  << (w ? w->get_str() + "^2" : std::string("not a square"))
                  << "\n";
      }
    }
  }
  if (cfg.format == "json") {
    json out;
    out["tuple"] = json::array();
    for (const auto& x : xs) out["tuple"].push_back(x.get_str());
    out["pairs"] = pairs;
    out["is_d4_tuple"] = all;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (all ? "yes: a D(4)-tuple" : "no: not a D(4)-tuple") << "\n";
  }
  return all ? 0 : kExitNo;
}

int cmd_extend(const Integer& a, const Integer& b, const Integer& c,
               const GlobalConfig& cfg) {
  d4::DTriple triple = d4::DTriple::make(a, b, c);
  d4::RegularExtension ext = d4::regular_extensions(triple);
  bool plus_ok =
      d4::is_d4_tuple({triple.a, triple.b, triple.c, ext.d_plus});
  bool minus_ok =
      ext.d_minus == 0 ||
      d4::is_d4_tuple({triple.a, triple.b, triple.c, ext.d_minus});
  if (cfg.format == "json") {
    json out;
    out["a"] = a.get_str();
    out["b"] = b.get_str();
    out["c"] = c.get_str();
    out["d_plus"] = ext.d_plus.get_str();
    out["d_minus"] = ext.d_minus.get_str();
    out["d_plus_quadruple"] = plus_ok;
    out["d_minus_quadruple_or_zero"] = minus_ok;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "d+ = " << ext.d_plus.get_str()
              << (plus_ok ? "  (quadruple verified)" : "  (FAILED)") << "\n";
    std::cout << "d- = " << ext.d_minus.get_str();
    if (ext.d_minus == 0)
      std::cout << "  (degenerate: c = a + b + 2 sqrt(ab+4))";
    else
      std::cout << (minus_ok ? "  (quadruple verified)" : "  (FAILED)");
    std::cout << "\n";
  }
  return plus_ok && minus_ok ? 0 : kExitNo;
}

int cmd_intersect(const Integer& a, const Integer& b, std::size_t m_max,
                  const GlobalConfig& cfg) {
  auto hits = d4::find_intersections(a, b, m_max);
  if (cfg.format == "json") {
    std::cout << "[";
    for (std::size_t i = 0; i < hits.size(); ++i)
      std::cout << (i ? "," : "") << "\n  " << d4::to_json(hits[i], a, b);
    std::cout << (hits.empty() ? "]" : "\n]") << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "epsilon,m,n,z,derived_c\n";
    for (const auto& hit : hits)
      std::cout << hit.epsilon << "," << hit.m << "," << hit.n << ","
                << hit.z.get_str() << "," << hit.derived_c.get_str() << "\n";
  } else {
    if (hits.empty()) {
      std::cout << "no intersections with 2 <= m <= " << m_max << "\n";
    } else {
      std::cout << "eps  m  n  z  c\n";
      for (const auto& hit : hits)
        std::cout << (hit.epsilon > 0 ? "+1" : "-1") << "  " << hit.m << "  "
                  << hit.n << "  " << hit.z.get_str() << "  "
                  << hit.derived_c.get_str() << "\n";
    }
  }
  return 0;
}

int cmd_reduce(const Integer& a, const Integer& b, const std::string& m0_text,
               int steps, const GlobalConfig& cfg) {
  Integer M0;
  if (!m0_text.empty()) {
    M0 = parse_integer(m0_text);
  } else if (b == 64 * a + 32) {
    M0 = d4::b1_case_m_upper_derived(a, 2, cfg.precision).floor_upper() + 1;
  } else if (b == d4::b_nu(a, 2)) {
    M0 = d4::sextuple_m_bound(b, cfg.precision, cfg.precision_cap);
  } else {
    std::cerr << "reduce: --M0 required (no bounds-derivable default for this "
                 "pair)\n";
    return kExitUsage;
  }
  d4::ReductionTranscript tr = d4::reduce_pair(
      a, b, M0, steps, cfg.precision, cfg.precision_cap);
  if (cfg.format == "json") {
    for (const auto& record : tr.steps)
      std::cout << d4::to_json(record, a, b) << "\n";
  } else if (cfg.format == "csv") {
    std::cout << "step,epsilon,q,eps0_lo,eps0_hi,new_M,precision_bits\n";
    for (const auto& record : tr.steps)
      std::cout << record.round << "," << record.epsilon << ","
                << record.q.get_str() << "," << record.eps0_lo << ","
                << record.eps0_hi << "," << record.new_M.get_str() << ","
                << record.precision_bits << "\n";
  } else {
    std::cout << "M0 = " << tr.initial_M.get_str() << "\n";
    for (const auto& record : tr.steps)
      std::cout << "round " << record.round << " eps=" << record.epsilon
                << " q=" << record.q.get_str() << " eps0=["
                << record.eps0_lo << ", " << record.eps0_hi << "] -> M="
                << record.new_M.get_str() << " (" << record.precision_bits
                << " bits)\n";
    std::cout << "final M = " << tr.final_M.get_str()
              << (tr.resolved ? "" : "  UNRESOLVED: " + tr.failure_reason)
              << "\n";
  }
  return tr.resolved ? 0 : kExitUnresolved;
}

int cmd_campaign(const std::string& name, long a_max,
                 unsigned long long limit, std::size_t m_max, bool resume,
                 const GlobalConfig& cfg) {
  d4::CampaignSpec spec;
  spec.name = name;
  spec.a_max = a_max;
  spec.limit = limit;
  spec.m_max = m_max;
  spec.precision = cfg.precision;
  spec.precision_cap = cfg.precision_cap;
  spec.workers = cfg.workers;
  spec.output_dir = cfg.output_dir;
  spec.resume = resume;
  int status = d4::run_campaign(spec);
  std::cout << "campaign " << name << " finished with exit status " << status
            << "; reports under " << cfg.output_dir << "\n";
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"D(4)-tuple verification toolkit"};
  app.set_config("--config", "d4tuples.conf",
                 "Load key=value defaults from a config file");

  GlobalConfig cfg;
  app.add_option("--precision", cfg.precision, "Working precision in bits")
      ->envname("D4TUPLES_PRECISION")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--precision-cap", cfg.precision_cap,
                 "Escalation cap in bits")
      ->envname("D4TUPLES_PRECISION_CAP")
      ->check(CLI::Range(64L, 1L << 20));
  app.add_option("--workers", cfg.workers, "Worker threads for campaigns")
      ->envname("D4TUPLES_WORKERS")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--format", cfg.format, "Output format")
      ->envname("D4TUPLES_FORMAT")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output-dir", cfg.output_dir, "Report directory")
      ->envname("D4TUPLES_OUTPUT_DIR");

  // check
  std::vector<std::string> check_elems;
  auto* check = app.add_subcommand("check", "Test a tuple for the D(4) property");
  check->add_option("elements", check_elems, "Two or more positive integers")
      ->required()
      ->expected(2, -1);

  // extend
  std::string ext_a, ext_b, ext_c;
  auto* extend =
      app.add_subcommand("extend", "Regular extensions d+- of a triple");
  extend->add_option("a", ext_a)->required();
  extend->add_option("b", ext_b)->required();
  extend->add_option("c", ext_c)->required();

  // intersect
  std::string int_a, int_b;
  std::size_t int_mmax = 0;
  auto* intersect = app.add_subcommand(
      "intersect", "Solutions of v_m = w_n for a pair (a, b)");
  intersect->add_option("a", int_a)->required();
  intersect->add_option("b", int_b)->required();
  intersect->add_option("--m-max", int_mmax, "Largest index m searched")
      ->required()
      ->check(CLI::Range(std::size_t(1), std::size_t(100000)));

  // reduce
  std::string red_a, red_b, red_m0;
  int red_steps = 5;
  auto* reduce =
      app.add_subcommand("reduce", "Run the reduction on a pair (a, b)");
  reduce->add_option("a", red_a)->required();
  reduce->add_option("b", red_b)->required();
  reduce->add_option("--M0", red_m0, "Initial bound (decimal, 4.3e19 style)");
  reduce->add_option("--steps", red_steps, "Maximum reduction rounds")
      ->check(CLI::Range(1, 64));

  // campaign
  std::string camp_name;
  long camp_amax = 500;
  unsigned long long camp_limit = 10000;
  std::size_t camp_mmax = 200;
  bool camp_resume = false;
  auto* campaign = app.add_subcommand("campaign", "Run a verification sweep");
  campaign->add_option("name", camp_name, "b1|b2|conjecture1|theorem15|spotcheck")
      ->required()
      ->check(CLI::IsMember({"b1", "b2", "conjecture1", "theorem15",
                             "spotcheck"}));
  campaign->add_option("--a-max", camp_amax, "Sweep upper bound on a");
  campaign->add_option("--limit", camp_limit, "Scan limit on c");
  campaign->add_option("--m-max", camp_mmax, "Spotcheck index bound");
  campaign->add_flag("--resume", camp_resume, "Reuse checkpointed cases");

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check) return cmd_check(check_elems, cfg);
    if (*extend)
      return cmd_extend(parse_integer(ext_a), parse_integer(ext_b),
                        parse_integer(ext_c), cfg);
    if (*intersect)
      return cmd_intersect(parse_integer(int_a), parse_integer(int_b),
                           int_mmax, cfg);
    if (*reduce)
      return cmd_reduce(parse_integer(red_a), parse_integer(red_b), red_m0,
                        red_steps, cfg);
    if (*campaign)
      return cmd_campaign(camp_name, camp_amax, camp_limit, camp_mmax,
                          camp_resume, cfg);
    std::cout << app.help() << "\n";
    return 0;
  } catch (const d4::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const d4::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return kExitUnresolved;
  } catch (const d4::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitUnresolved;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return 0;
}
