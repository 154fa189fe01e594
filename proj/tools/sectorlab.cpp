// sectorlab: batch verification of operator mean inequalities for sector matrices.
//
//   sectorlab verify    --checks all --seed 1 [--out DIR]
//   sectorlab tightness --checks M2 --seed 1 --dims 1 --thetas 0 --bounds 1:4 --p 1
//   sectorlab mutate    --checks F1 --seed 1 --factor 0.9 --clause right
//   sectorlab range     matrix.txt --resolution 64 [--out boundary.csv]
//   sectorlab replay    witness-F1-123.txt
//
// Exit status: 0 all pass, 1 at least one inequality failure, 2 configuration error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sectorlab/report.hpp"
#include "sectorlab/verifier.hpp"

namespace fs = std::filesystem;
using namespace sectorlab;

namespace {

struct Options {
  std::vector<std::string> checks{"all"};
  int trials = 200;
  std::vector<std::string> dims;
  std::vector<std::string> thetas;
  std::vector<std::string> bounds;
  std::vector<std::string> p_values;
  std::optional<std::uint64_t> seed;
  double tol_rel = 1e-8;
  double tol_abs = 1e-10;
  double boundary_fraction = 0.25;
  bool drop_sec = false;
  std::string out = ".";
  std::vector<double> factors;
  std::string clause;
  int resolution = 256;
  std::string input;
};

double parse_angle(const std::string& s) {
  // Accepts plain numbers and "pi/k".
  if (s.rfind("pi/", 0) == 0) return std::acos(-1.0) / parse_double(s.substr(3));
  if (s == "pi") return std::acos(-1.0);
  return parse_double(s);
}

SuiteConfig make_config(const Options& o) {
  if (!o.seed) throw Error(ErrorKind::Config, "--seed is required");
  SuiteConfig c;
  c.checks = resolve_checks(o.checks);
  c.seed = *o.seed;
  c.grid.trials = o.trials;
  if (o.trials < 1) throw Error(ErrorKind::Config, "--trials must be positive");
  try {
    if (!o.dims.empty()) {
      c.grid.dims.clear();
      for (const auto& d : o.dims) {
        const double x = parse_double(d);
        if (x != std::floor(x) || x < 1) throw Error(ErrorKind::Config, "bad dimension '" + d + "'");
        c.grid.dims.push_back(static_cast<int>(x));
      }
    }
    if (!o.thetas.empty()) {
      c.grid.thetas.clear();
      for (const auto& t : o.thetas) c.grid.thetas.push_back(parse_angle(t));
    }
    if (!o.bounds.empty()) {
      c.grid.bounds.clear();
      for (const auto& b : o.bounds) {
        const auto colon = b.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::Config, "bounds must look like m:M, got '" + b + "'");
        c.grid.bounds.emplace_back(parse_double(b.substr(0, colon)), parse_double(b.substr(colon + 1)));
      }
    }
    for (const auto& p : o.p_values) c.p_values.push_back(parse_double(p));
  } catch (const Error& e) {
    throw Error(ErrorKind::Config, e.what());
  }
  for (const auto& [m, M] : c.grid.bounds) {
    if (!(m > 0 && m <= M)) throw Error(ErrorKind::Config, "bounds need 0 < m <= M");
  }
  for (double t : c.grid.thetas) {
    if (!(t >= 0 && t < std::acos(-1.0) / 2)) throw Error(ErrorKind::Config, "theta must lie in [0, pi/2)");
  }
  if (!(o.tol_rel >= 0 && o.tol_abs >= 0)) throw Error(ErrorKind::Config, "tolerances must be nonnegative");
  if (!(o.boundary_fraction >= 0 && o.boundary_fraction <= 1)) {
    throw Error(ErrorKind::Config, "--boundary-fraction must lie in [0, 1]");
  }
  c.eval.tol = {o.tol_rel, o.tol_abs};
  c.eval.drop_sec = o.drop_sec;
  c.boundary_fraction = o.boundary_fraction;
  return c;
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory '" + dir + "': " + ec.message());
  return p;
}

int write_witnesses(const fs::path& dir, const SuiteResult& suite) {
  int written = 0;
  for (const auto& r : suite.results) {
    if (!r.witness) continue;
    write_file((dir / ("witness-" + r.check + "-" + std::to_string(r.seed) + ".txt")).string(), *r.witness);
    ++written;
  }
  return written;
}

void print_summary(const SuiteResult& suite) {
  for (const auto& s : suite.summary) {
    std::printf("%-3s trials=%-6d failures=%-4d min_slack=%-12.4g max_ratio=%.6g\n", s.check.c_str(), s.trials,
                s.failures, s.min_slack, s.max_ratio);
  }
}

int cmd_verify(const Options& o) {
  const SuiteConfig config = make_config(o);
  const SuiteResult suite = run_suite(config);
  const fs::path dir = prepare_out(o.out);
  write_file((dir / "report.json").string(), report_json(config, suite));
  write_file((dir / "slack.csv").string(), slack_csv(suite));
  write_witnesses(dir, suite);
  print_summary(suite);
  return suite.failures == 0 ? 0 : 1;
}

int cmd_tightness(const Options& o) {
  const SuiteConfig config = make_config(o);
  const auto rows = tightness(config);
  const fs::path dir = prepare_out(o.out);
  write_file((dir / "tightness.json").string(), tightness_json(rows));
  for (const auto& t : rows) {
    std::printf("%s %-24s n=%d theta=%.4g m=%g M=%g constant=%.6g max_ratio=%.6g\n", t.check.c_str(),
                t.clause.c_str(), t.n, t.theta, t.m, t.M, t.theoretical_constant, t.empirical_max_ratio);
  }
  return 0;
}

int cmd_mutate(const Options& o) {
  const SuiteConfig config = make_config(o);
  const std::vector<double> factors = o.factors.empty() ? std::vector<double>{1.0} : o.factors;
  for (double f : factors) {
    if (!(f > 0)) throw Error(ErrorKind::Config, "--factor must be positive");
  }
  const int trials = static_cast<int>(config.checks.size() * config.grid.dims.size() * config.grid.thetas.size() *
                                      config.grid.bounds.size()) *
                     config.grid.trials;
  std::vector<MutationRow> rows;
  for (double f : factors) {
    rows.push_back({f, o.clause, mutation_test(config, f, o.clause), trials});
    std::printf("factor=%g clause=%s violations=%d/%d\n", f, o.clause.empty() ? "*" : o.clause.c_str(),
                rows.back().violations, trials);
  }
  const fs::path dir = prepare_out(o.out);
  write_file((dir / "mutation.json").string(), mutation_json(rows));
  return 0;
}

int cmd_range(const Options& o) {
  if (o.resolution < 8) throw Error(ErrorKind::Config, "--resolution must be at least 8");
  const CMatrixd a = parse_matrix(read_file(o.input));
  const RangeBoundary rb = range_boundary(a, o.resolution);
  if (o.out.empty() || o.out == "-") {
    write_boundary_csv(std::cout, rb);
  } else {
    std::ostringstream ss;
    write_boundary_csv(ss, rb);
    write_file(o.out, ss.str());
  }
  return 0;
}

int cmd_replay(const Options& o) {
  const TrialBundle b = read_witness(read_file(o.input));
  EvalOptions eval;
  eval.tol = {o.tol_rel, o.tol_abs};
  const CheckResult r = run_check(b, eval);
  std::printf("%s seed=%llu n=%d theta=%.17g m=%.17g M=%.17g %s (%s)\n", r.check.c_str(),
              static_cast<unsigned long long>(r.seed), r.n, r.theta, r.m, r.M, r.pass ? "PASS" : "FAIL",
              r.precision.c_str());
  if (!r.error.empty()) std::printf("  error: %s\n", r.error.c_str());
  for (const auto& c : r.clauses) {
    std::printf("  %-28s %s slack=%.6g threshold=%.3g ratio=%.17g constant=%.17g\n", c.name.c_str(),
                c.pass ? "ok  " : "FAIL", c.slack, c.threshold, c.ratio, c.constant);
  }
  return r.pass ? 0 : 1;
}

void add_suite_options(CLI::App* sub, Options& o) {
  sub->add_option("--checks", o.checks, "Check ids, comma separated, or 'all'")->delimiter(',');
  sub->add_option("--trials", o.trials, "Trials per grid cell");
  sub->add_option("--dims", o.dims, "Matrix dimensions")->delimiter(',');
  sub->add_option("--thetas", o.thetas, "Sector half-angles (numbers or pi/k)")->delimiter(',');
  sub->add_option("--bounds", o.bounds, "Spectral bounds m:M")->delimiter(',');
  sub->add_option("--p", o.p_values, "Override the exponent grid")->delimiter(',');
  sub->add_option("--seed", o.seed, "Master seed (required)");
  sub->add_option("--tol-rel", o.tol_rel, "Relative Loewner tolerance");
  sub->add_option("--tol-abs", o.tol_abs, "Absolute Loewner tolerance");
  sub->add_option("--boundary-fraction", o.boundary_fraction, "Share of samples on the sector boundary");
  sub->add_flag("--drop-sec", o.drop_sec, "Replace sec(theta) by 1 in every constant");
  sub->add_option("--out", o.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized verification of operator mean inequalities for sector matrices"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "Run the inequality registry over the grid");
  add_suite_options(verify, o);
  auto* tight = app.add_subcommand("tightness", "Empirical versus theoretical constants");
  add_suite_options(tight, o);
  auto* mutate = app.add_subcommand("mutate", "Count violations after weakening constants");
  add_suite_options(mutate, o);
  mutate->add_option("--factor", o.factors, "Constant multipliers")->delimiter(',');
  mutate->add_option("--clause", o.clause, "Only weaken this clause");
  auto* range = app.add_subcommand("range", "Boundary of the numerical range as CSV (phi,re,im)");
  range->add_option("input", o.input, "Matrix file")->required();
  range->add_option("--resolution", o.resolution, "Number of boundary angles");
  range->add_option("--out", o.out, "Output CSV file (default stdout)");
  auto* replay = app.add_subcommand("replay", "Re-evaluate a witness file");
  replay->add_option("input", o.input, "Witness file")->required();
  replay->add_option("--tol-rel", o.tol_rel, "Relative Loewner tolerance");
  replay->add_option("--tol-abs", o.tol_abs, "Absolute Loewner tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (range->parsed() && o.out == ".") o.out = "-";

  try {
    if (verify->parsed()) return cmd_verify(o);
    if (tight->parsed()) return cmd_tightness(o);
    if (mutate->parsed()) return cmd_mutate(o);
    if (range->parsed()) return cmd_range(o);
    if (replay->parsed()) return cmd_replay(o);
  } catch (const Error& e) {
    std::fprintf(stderr, "sectorlab: %s\n", e.what());
    if (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Parse) return 2;
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "sectorlab: %s\n", e.what());
    return 2;
  }
  return 2;
}
