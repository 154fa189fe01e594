#pragma once

// Inequality-check registry, trial execution, slack statistics, tightness
// estimation and mutation (harness-sensitivity) testing.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sectorlab/means.hpp"
#include "sectorlab/pulm.hpp"
#include "sectorlab/sector.hpp"

namespace sectorlab {

/// Kantorovich constant (M+m)^2 / (4 m M).
struct KConstant {
  double m = 1;
  double M = 1;
  double value = 1;
};

KConstant kantorovich(double m, double M);

struct CheckDef {
  std::string id;
  std::string statement;
  std::vector<double> p_values;  // empty when the statement has no exponent
};

/// The fixed registry F1-F5, P1-P2, M1-M8, D0-D5, W0-W2.
const std::vector<CheckDef>& registry();
const CheckDef* find_check(const std::string& id);

/// Sampled inputs for one trial. Each check reads the fields its hypotheses need.
struct TrialBundle {
  std::string check;
  std::uint64_t seed = 0;
  int n = 2;
  double theta = 0;
  double m = 1;
  double M = 1;
  double p = 1;
  double v = 0.5;              // weight shared by the arithmetic/harmonic endpoints
  MeanSpec sigma1;             // between the harmonic and arithmetic means of weight v
  MeanSpec sigma2;             // same family, independent exponent
  MeanSpec sigma_free;         // arbitrary catalog mean
  MeanSpec sigma_below_arith;  // some mean below the unweighted arithmetic mean
  OpMonotone f;
  PULMap phi;
  CMatrixd A, B;                // m I <= Re A, Re B <= M I
  CMatrixd A_inv_bounded;       // m I <= Re(A^{-1}) <= M I
  CMatrixd B_inv_bounded;

  /// Lower and upper of (sigma1, sigma2) in the mean order.
  std::pair<MeanSpec, MeanSpec> ordered_pair() const;
  std::string params() const;
};

enum class ClauseKind { Loewner, Scalar, LogScalar };

struct ClauseResult {
  std::string name;
  ClauseKind kind = ClauseKind::Loewner;
  double constant = 1;   // constant actually applied (after mutation)
  double slack = 0;      // lambda_min(c RHS - LHS), c RHS - LHS, or log(c RHS / LHS)
  double ratio = 0;      // LHS relative to RHS without its constant; NaN when undefined
  double threshold = 0;  // allowed negative slack
  bool pass = true;
};

struct CheckResult {
  std::string check;
  std::string params;
  std::uint64_t seed = 0;
  int n = 0;
  double theta = 0;
  double m = 0;
  double M = 0;
  bool pass = true;
  double slack = 0;  // minimum over clauses
  double ratio = 0;  // headline (first) clause
  std::string precision = "double";
  std::string error;
  std::vector<ClauseResult> clauses;
  std::optional<std::string> witness;  // present iff !pass
};

struct EvalOptions {
  ToleranceSpec tol;
  MatFnOptions kernel;
  double factor = 1;           // multiplies right-hand constants (mutation testing)
  std::string mutated_clause;  // empty: every clause
  bool drop_sec = false;       // replace sec(theta) by 1 in every constant
  bool reevaluate = true;      // confirm failures in extended precision
};

/// Evaluates every clause of the bundle's check; Real selects the kernel precision.
template <typename Real>
std::vector<ClauseResult> evaluate_clauses(const TrialBundle& bundle, const EvalOptions& opts);

/// Runs one trial. A failing double evaluation is re-run in long double and only
/// reported when it fails there too.
CheckResult run_check(const TrialBundle& bundle, const EvalOptions& opts = {});

struct Grid {
  std::vector<int> dims{2, 3, 5};
  std::vector<double> thetas{0.0, 0.52359877559829882, 0.78539816339744828, 1.25};
  std::vector<std::pair<double, double>> bounds{{1, 2}, {1, 10}, {0.1, 1}};
  int trials = 200;
};

struct SuiteConfig {
  std::vector<std::string> checks;  // ids; "all" expands to the registry
  Grid grid;
  std::uint64_t seed = 1;
  EvalOptions eval;
  double boundary_fraction = 0.25;
  std::vector<double> p_values;  // overrides each check's exponent grid when nonempty
  int threads = 0;               // 0: SECTORLAB_THREADS or hardware concurrency
};

struct CheckSummary {
  std::string check;
  int trials = 0;
  int passes = 0;
  int failures = 0;
  double min_slack = 0;
  double max_ratio = 0;
  std::vector<std::uint64_t> failing_seeds;
};

struct SuiteResult {
  std::vector<CheckResult> results;
  std::vector<CheckSummary> summary;
  int failures = 0;
};

/// Expands "all" and rejects unknown ids with ErrorKind::Config.
std::vector<std::string> resolve_checks(const std::vector<std::string>& ids);

/// Seed of one trial, derived from (master seed, check id, cell index, trial index).
std::uint64_t trial_seed(std::uint64_t master, const std::string& check, int cell, int trial);

/// Samples the inputs of one trial. Dimension 1 enumerates scalar extremal configurations.
TrialBundle make_bundle(const std::string& check, int n, double theta, double m, double M, std::uint64_t seed,
                        int trial_index, const SuiteConfig& config);

SuiteResult run_suite(const SuiteConfig& config);

struct TightnessReport {
  std::string check;
  std::string clause;
  int n = 0;
  double theta = 0;
  double m = 0;
  double M = 0;
  double theoretical_constant = 0;  // constant at the attaining trial
  double empirical_max_ratio = 0;
  std::uint64_t attaining_seed = 0;
};

/// Empirical maximum of LHS / RHS-without-constant per (check, clause, grid cell).
std::vector<TightnessReport> tightness(const SuiteConfig& config);

/// Number of failing trials when the right-hand constant is multiplied by factor.
int mutation_test(SuiteConfig config, double factor, const std::string& clause = "");

/// Witness replay file: JSON with every float hex-encoded.
std::string write_witness(const TrialBundle& bundle, const CheckResult& result);
TrialBundle read_witness(const std::string& text);

std::string hex_double(double x);
double parse_double(const std::string& s);

}  // namespace sectorlab
