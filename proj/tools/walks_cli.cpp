// Command-line front end: enumerate walks, verify identities, expand closed
// forms, fit algebraic equations, print asymptotic predictions, and run the
// acceptance suite.  Outputs are deterministic (no timestamps); the format
// version travels in a '#'-prefixed header line (CSV) or a "version" field
// (JSON).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "walks/acceptance.hpp"
#include "walks/asymptotics.hpp"
#include "walks/closedform.hpp"
#include "walks/enumerate.hpp"
#include "walks/guess.hpp"
#include "walks/io.hpp"
#include "walks/model.hpp"
#include "walks/primes.hpp"
#include "walks/verify.hpp"

namespace {

constexpr const char* kVersionLine = "# walks 1.0";
constexpr const char* kVersion = "1.0";

using namespace walks;

struct usage_error_exit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

StepSet resolve_model(const std::string& spec, const std::string& edge_rule) {
  StepSet s;
  const auto& names = builtin_model_names();
  bool builtin = false;
  for (const auto& n : names) builtin = builtin || n == spec;
  if (builtin) {
    s = model_by_name(spec);
  } else {
    std::ifstream in(spec);
    if (!in) throw usage_error_exit("unknown model (not a builtin name or readable file): " + spec);
    std::ostringstream text;
    text << in.rdbuf();
    s = model_from_json(text.str());
  }
  if (edge_rule == "forbid")
    s.edge_rule = EdgeRule::ForbidDiagonalJumps;
  else if (edge_rule == "allow")
    s.edge_rule = EdgeRule::AllowDiagonalJumps;
  else
    throw usage_error_exit("--edge-rule must be forbid or allow");
  return s;
}

RegionKind resolve_region(const std::string& r) {
  if (r == "quadrant") return RegionKind::Quadrant;
  if (r == "three-quadrant") return RegionKind::ThreeQuadrant;
  if (r == "half-plane") return RegionKind::UpperHalfPlane;
  if (r == "plane") return RegionKind::FullPlane;
  throw usage_error_exit("--region must be quadrant, three-quadrant, half-plane or plane");
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw usage_error_exit("cannot open output file: " + out_path);
  out << text;
}

std::string counts_output(const std::vector<Rat>& counts, const std::string& format) {
  if (format == "csv") return std::string(kVersionLine) + "\n" + counts_csv(counts);
  nlohmann::json j;
  j["version"] = kVersion;
  nlohmann::json arr = nlohmann::json::array();
  for (const Rat& c : counts) arr.push_back(c.get_str());
  j["counts"] = std::move(arr);
  return j.dump() + "\n";
}

int cmd_enumerate(const std::string& model, const std::string& region, const std::string& edge_rule,
                  const std::string& start_text, const std::string& end_text, bool total, int N,
                  int primes, const std::string& format, const std::string& out_path) {
  StepSet s = resolve_model(model, edge_rule);
  RegionKind r = resolve_region(region);
  StartDistribution start = parse_start(start_text);
  Endpoint end = Endpoint::total_sum();
  if (!total) {
    if (end_text.empty()) throw usage_error_exit("need --end i,j or --total");
    auto [i, j] = parse_point(end_text);
    end = Endpoint::at(i, j);
  }
  std::vector<Int> scaled;
  if (primes > 0) {
    std::vector<uint64_t> schedule = prime_schedule(primes);
    std::vector<std::vector<uint64_t>> per_prime = count_modular(s, r, start, end, N, schedule);
    Int growth((long)s.steps.size());
    Int bound(start.scale);
    for (auto& [i, j, w] : start.entries) (void)i, (void)j, bound += Int(std::abs(w));
    for (int n = 0; n <= N; ++n) {
      std::vector<uint64_t> residues(schedule.size());
      for (size_t k = 0; k < schedule.size(); ++k) residues[k] = per_prime[k][n];
      scaled.push_back(crt_reconstruct(residues, schedule, SignMode::Balanced, bound));
      bound *= growth;
    }
  } else {
    scaled = count_sequence(s, r, start, end, N);
  }
  emit(out_path, counts_output(descale(scaled, start.scale), format));
  return 0;
}

int cmd_verify(const std::string& identity, const std::string& model, const std::string& edge_rule,
               const std::string& start_text, int N, const std::string& out_path) {
  StepSet s = resolve_model(model, edge_rule);
  std::vector<IdentityCheck> checks;
  if (identity == "reflection") {
    auto [a, b] = parse_point(start_text);
    checks.push_back(check_reflection(s, a, b, N, std::min(N, 8)));
  } else if (identity == "all") {
    for (const std::string& id : verify_identity_names()) {
      try {
        std::vector<IdentityCheck> cs = run_identity(id, s, N);
        checks.insert(checks.end(), cs.begin(), cs.end());
      } catch (const model_error&) {
        // identity not applicable to this model (e.g. infinite group); skip
      }
    }
  } else {
    checks = run_identity(identity, s, N);
  }
  bool pass = true;
  for (const auto& c : checks) pass = pass && c.pass;
  emit(out_path, to_json(checks) + "\n");
  return pass ? 0 : 1;
}

int cmd_closed_form(const std::string& name, int order, const std::string& x0_text,
                    const std::string& format, const std::string& out_path) {
  SQ s = named_closed_series(name, order, rat_of_string(x0_text));
  if (format == "csv") {
    std::vector<Rat> counts(s.c.begin(), s.c.end());
    emit(out_path, std::string(kVersionLine) + "\n" + counts_csv(counts));
  } else {
    nlohmann::json j;
    j["version"] = kVersion;
    j["name"] = name;
    j["coefficients"] = nlohmann::json::parse(series_json(s));
    emit(out_path, j.dump() + "\n");
  }
  return 0;
}

int cmd_guess(const std::string& input, int dF, int dt, const std::string& prime_text, bool square,
              const std::string& out_path) {
  std::vector<Rat> seq;
  if (input == "-") {
    seq = parse_counts_csv(std::cin);
  } else {
    std::ifstream in(input);
    if (!in) throw usage_error_exit("cannot open input file: " + input);
    seq = parse_counts_csv(in);
  }
  uint64_t prime = 0;
  if (prime_text == "auto")
    prime = prime_schedule(1)[0];
  else
    prime = std::strtoull(prime_text.c_str(), nullptr, 10);
  CandidateEquation c;
  if (dF > 0 && dt > 0) {
    GuessSpec spec;
    spec.dF = dF;
    spec.dt = dt;
    spec.square_ansatz = square;
    if (prime == 0) {
      spec.sequence = seq;
    } else {
      spec.residues = residues_mod(seq, prime);
      spec.prime = prime;
    }
    c = guess_algebraic(spec);
  } else if (prime == 0) {
    c = guess_with_ladder(seq);
  } else {
    c = guess_with_ladder_mod(residues_mod(seq, prime), prime);
  }
  emit(out_path, to_json(c) + "\n");
  return 0;
}

int cmd_asymptotics(const std::string& series, int N, const std::string& out_path) {
  if (series != "total" && series != "origin")
    throw usage_error_exit("--series must be total or origin");
  AsymptoticPrediction p = predicted(series);
  RealSeries dp = real_dp_normalized(model_by_name("king"), RegionKind::ThreeQuadrant, N);
  const std::vector<double>& seq = series == "total" ? dp.total : dp.origin;
  double alpha = p.exponent.get_d();
  double beta = p.correction_exponent.get_d();
  double cc = std::stod(p.correction_constant);
  EmpiricalFit fit =
      empirical_fit(seq, alpha, [beta, cc](int n) { return cc * std::pow((double)n, beta); });
  std::ostringstream out;
  out << kVersionLine << "\n";
  out << "quantity,predicted,empirical,spread\n";
  out << "growth," << p.growth << ",,\n";
  out << "exponent," << p.exponent.get_str() << "," << fit.exponent << "," << fit.exponent_spread
      << "\n";
  out << "constant," << p.constant << "," << fit.constant << "," << fit.constant_spread << "\n";
  out << "correction_exponent," << p.correction_exponent.get_str() << ",,\n";
  out << "correction_constant," << p.correction_constant << ",,\n";
  emit(out_path, out.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact enumeration and verification toolkit for small-step lattice walks"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (modular runs; 0 = hardware)");

  std::string model = "king", region = "three-quadrant", edge_rule = "forbid";
  std::string start_text = "0,0", end_text, format = "csv", out_path;
  std::string identity = "all", name, x0_text = "2", prime_text = "auto", input, series = "total";
  bool total = false, square = false;
  int N = 10, order = 30, primes = 0, dF = 0, dt = 0;

  CLI::App* en = app.add_subcommand("enumerate", "count walks confined to a region");
  en->add_option("--model", model, "builtin model name or JSON descriptor path");
  en->add_option("--region", region, "quadrant|three-quadrant|half-plane|plane");
  en->add_option("--edge-rule", edge_rule, "forbid|allow diagonal jumps across the corner");
  en->add_option("--start", start_text, "weighted start distribution \"a,b[:w]; ...\"");
  en->add_option("--end", end_text, "fixed endpoint \"i,j\"");
  en->add_flag("--total", total, "sum over all endpoints");
  en->add_option("--n", N, "maximum walk length")->required();
  en->add_option("--primes", primes, "count modulo this many primes and reconstruct (0 = exact)");
  en->add_option("--format", format, "csv|json");
  en->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* ve = app.add_subcommand("verify", "check table-level identities exactly");
  ve->add_option("--identity", identity, "identity name or \"all\"");
  ve->add_option("--model", model, "builtin model name or JSON descriptor path");
  ve->add_option("--edge-rule", edge_rule, "forbid|allow");
  ve->add_option("--start", start_text, "start point for the reflection identity");
  ve->add_option("--n", N, "order checked");
  ve->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* cf = app.add_subcommand("closed-form", "expand a named closed-form series");
  cf->add_option("--name", name, "series name")->required();
  cf->add_option("--order", order, "truncation order");
  cf->add_option("--x0", x0_text, "evaluation point for parametrized series");
  cf->add_option("--format", format, "csv|json");
  cf->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* gu = app.add_subcommand("guess", "fit an algebraic equation to a sequence");
  gu->add_option("--input", input, "counts CSV file, or - for stdin")->required();
  gu->add_option("--dF", dF, "degree bound in the series (0 = ladder search)");
  gu->add_option("--dt", dt, "degree bound in t (0 = ladder search)");
  gu->add_option("--prime", prime_text, "auto | 0 (exact) | explicit prime");
  gu->add_flag("--square", square, "restrict to even powers of the series");
  gu->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* as = app.add_subcommand("asymptotics", "predicted vs fitted growth constants");
  as->add_option("--series", series, "total|origin");
  as->add_option("--n", N, "enumeration length for the empirical fit");
  as->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* st = app.add_subcommand("selftest", "run the acceptance suite");
  (void)st;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (en->parsed())
      return cmd_enumerate(model, region, edge_rule, start_text, end_text, total, N, primes, format,
                           out_path);
    if (ve->parsed()) return cmd_verify(identity, model, edge_rule, start_text, N, out_path);
    if (cf->parsed()) return cmd_closed_form(name, order, x0_text, format, out_path);
    if (gu->parsed()) return cmd_guess(input, dF, dt, prime_text, square, out_path);
    if (as->parsed()) return cmd_asymptotics(series, N, out_path);
    if (st->parsed()) {
      std::vector<CriterionResult> rs = run_acceptance(std::cout);
      return all_passed(rs) ? 0 : 1;
    }
  } catch (const no_candidate& e) {
    std::cerr << "no candidate: " << e.what() << "\n";
    return 1;
  } catch (const usage_error_exit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
