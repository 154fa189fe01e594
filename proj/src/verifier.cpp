#include "sectorlab/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

namespace sectorlab {

KConstant kantorovich(double m, double M) {
  if (!(m > 0 && m <= M)) throw Error(ErrorKind::Domain, "kantorovich: need 0 < m <= M");
  return {m, M, (M + m) * (M + m) / (4 * m * M)};
}

const std::vector<CheckDef>& registry() {
  static const std::vector<CheckDef> defs = {
      {"F1", "Re(A^-1) <= (Re A)^-1 <= sec^2 Re(A^-1)", {}},
      {"F2", "Re A s Re B <= Re(A s B) <= sec^2 (Re A s Re B); A s B in the sector", {}},
      {"F3", "Phi(A)^-1 <= Phi(A^-1) for A > 0", {}},
      {"F4", "|AB| <= |A+B|^2 / 4 for A, B >= 0", {}},
      {"F5", "|A^p + B^p| <= |(A+B)^p| for A, B >= 0, p > 1", {1.5, 2, 3}},
      {"P1", "Phi^p(A s1 B) <= alpha^p Phi^p(A s2 B) for positive A, B", {0.5, 1, 2, 3, 4}},
      {"P2", "f(Phi A) s1 f(Phi B) <= K f(Phi(A s2 B)) for positive A, B", {}},
      {"M1", "cos^2 Phi(Re(A s1 B)) + mM Phi(Re(A s2 B))^-1 <= (M+m) I", {}},
      {"M2", "Re^p Phi(A s1 B) <= sec^2p K^p Re^p Phi(A s2 B), 0 < p <= 2", {0.5, 1, 2}},
      {"M3", "Re^p Phi(A s1 B) <= sec^2p 4^(p-2) K^p Re^p Phi(A s2 B), p >= 2", {2, 3, 4}},
      {"M4", "Re^p Phi(A nabla B) <= alpha^p Re^p Phi(A s B)", {0.5, 1, 2, 3, 4}},
      {"M5", "Phi^p Re(A s1 B) <= alpha^p sec^4p Phi^p Re(A s2 B) under inverse bounds", {0.5, 1, 2, 3, 4}},
      {"M6", "s1 <= s2: Re(A s1 B) <= sec^2 Re(A s2 B), Re((A s2 B)^-1) <= sec^2 Re((A s1 B)^-1)", {}},
      {"M7", "Re f(Phi(A s1 B)) <= sec^2 Re f(K sec^2 Phi(A s2 B)) <= K sec^4 Re f(Phi(A s2 B))", {}},
      {"M8", "Re(f(Phi A) s1 f(Phi B)) <= K sec^4 Re f(Phi(A s2 B))", {}},
      {"D0", "det, singular value and norm sandwiches between Re A and A", {}},
      {"D1", "|det(A s1 B)| <= sec^3n K^n |det(A s2 B)|", {}},
      {"D2", "s_j(A s1 B) <= sec^4 K s_j(A s2 B)", {}},
      {"D3", "|A s1 B| <= sec^3 K |A s2 B| for unitarily invariant norms", {}},
      {"D4", "|det(A+B)| <= sec^2n |det(I+A)| |det(I+B)|; |A+B| <= sec |I+A| |I+B|", {}},
      {"D5", "s <= nabla: |det(A s B)| <= sec^4n / 2^n |det(I+A)| |det(I+B)|", {}},
      {"W0", "w(Re A) = |Re A|; f(|Re A|) <= |Re f(A)| <= sec^2 f(|Re A|); w(Re A) <= w(A) <= sec w(Re A)", {}},
      {"W1", "f(w(A s1 B)) <= sec^3 K w(f(A s2 B))", {}},
      {"W2", "w(f(Phi A) s1 f(Phi B)) <= K sec^5 w(f(Phi(A s2 B)))", {}},
  };
  return defs;
}

const CheckDef* find_check(const std::string& id) {
  for (const auto& d : registry()) {
    if (d.id == id) return &d;
  }
  return nullptr;
}

namespace {

// Exponent of a power-family mean, or nothing outside that family.
std::optional<double> power_exponent(const OpMonotone& f) {
  if (f.adjoint) return std::nullopt;
  switch (f.family) {
    case MeanFamily::Arithmetic: return 1.0;
    case MeanFamily::Harmonic: return -1.0;
    case MeanFamily::Geometric: return 0.0;
    case MeanFamily::Power: return f.r;
    case MeanFamily::Heinz: return std::nullopt;
  }
  return std::nullopt;
}

OpMonotone canonical_power(double r, double v) {
  if (r == 1) return OpMonotone::arithmetic(v);
  if (r == -1) return OpMonotone::harmonic(v);
  if (r == 0) return OpMonotone::geometric(v);
  return OpMonotone::power(r, v);
}

double sample_exponent(Rng& rng) {
  const double u = uniform01(rng);
  if (u < 0.125) return -1;
  if (u < 0.25) return 1;
  return -1 + 2 * uniform01(rng);
}

OpMonotone random_catalog_fn(Rng& rng) {
  const double v = uniform01(rng);
  switch (static_cast<int>(uniform01(rng) * 6)) {
    case 0: return OpMonotone::arithmetic(v);
    case 1: return OpMonotone::geometric(v);
    case 2: return OpMonotone::harmonic(v);
    case 3: return OpMonotone::heinz(v);
    case 4: {
      OpMonotone f = OpMonotone::heinz(v);
      f.adjoint = true;
      return f;
    }
    default: return OpMonotone::power(-1 + 2 * uniform01(rng), v);
  }
}

// Means below the unweighted arithmetic mean.
OpMonotone random_below_arithmetic(Rng& rng) {
  switch (static_cast<int>(uniform01(rng) * 4)) {
    case 0: return OpMonotone::geometric(0.5);
    case 1: return OpMonotone::harmonic(0.5);
    case 2: return OpMonotone::heinz(uniform01(rng));
    default: return canonical_power(-1 + 2 * uniform01(rng), 0.5);
  }
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool resample_kind(ErrorKind k) {
  return k == ErrorKind::HypothesisUnsatisfiable || k == ErrorKind::NotAccretive || k == ErrorKind::SpectrumOnCut ||
         k == ErrorKind::NearSingular;
}

bool all_pass(const std::vector<ClauseResult>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const ClauseResult& c) { return c.pass; });
}

void fill_from_clauses(CheckResult& r) {
  r.pass = all_pass(r.clauses);
  r.slack = std::numeric_limits<double>::infinity();
  for (const auto& c : r.clauses) r.slack = std::min(r.slack, c.slack);
  r.ratio = r.clauses.empty() ? std::numeric_limits<double>::quiet_NaN() : r.clauses.front().ratio;
}

CheckResult blank_result(const TrialBundle& b) {
  CheckResult r;
  r.check = b.check;
  r.params = b.params();
  r.seed = b.seed;
  r.n = b.n;
  r.theta = b.theta;
  r.m = b.m;
  r.M = b.M;
  return r;
}

// Like run_check, but hypothesis and domain errors of the double pass propagate so the caller can resample.
CheckResult evaluate_trial(const TrialBundle& b, const EvalOptions& opts) {
  CheckResult r = blank_result(b);
  try {
    r.clauses = evaluate_clauses<double>(b, opts);
  } catch (const Error& e) {
    if (resample_kind(e.kind())) throw;
    r.pass = false;
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    r.slack = std::numeric_limits<double>::quiet_NaN();
    r.ratio = std::numeric_limits<double>::quiet_NaN();
    r.witness = write_witness(b, r);
    return r;
  }
  fill_from_clauses(r);
  if (!r.pass && opts.reevaluate) {
    try {
      std::vector<ClauseResult> extended = evaluate_clauses<long double>(b, opts);
      r.clauses = std::move(extended);
      r.precision = "long double";
      fill_from_clauses(r);
    } catch (const Error&) {
      // The extended pass could not run; the double verdict stands.
    }
  }
  if (!r.pass) r.witness = write_witness(b, r);
  return r;
}

struct Cell {
  int n;
  double theta;
  double m;
  double M;
};

std::vector<Cell> cells_of(const Grid& g) {
  std::vector<Cell> out;
  for (int n : g.dims) {
    for (double t : g.thetas) {
      for (const auto& [m, M] : g.bounds) out.push_back({n, t, m, M});
    }
  }
  return out;
}

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SECTORLAB_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CheckResult run_trial(const std::string& check, const Cell& cell, int cell_index, int trial,
                      const SuiteConfig& config) {
  const std::uint64_t base = trial_seed(config.seed, check, cell_index, trial);
  std::string last_error;
  for (int attempt = 0; attempt < 100; ++attempt) {
    const std::uint64_t seed = attempt == 0 ? base : mix_seed(base, static_cast<std::uint64_t>(attempt));
    try {
      const TrialBundle b = make_bundle(check, cell.n, cell.theta, cell.m, cell.M, seed, trial, config);
      return evaluate_trial(b, config.eval);
    } catch (const Error& e) {
      if (!resample_kind(e.kind())) throw;
      last_error = std::string(to_string(e.kind())) + ": " + e.what();
    }
  }
  CheckResult r;
  r.check = check;
  r.seed = base;
  r.n = cell.n;
  r.theta = cell.theta;
  r.m = cell.m;
  r.M = cell.M;
  r.pass = false;
  r.slack = r.ratio = std::numeric_limits<double>::quiet_NaN();
  r.error = "no admissible sample after 100 attempts (" + last_error + ")";
  return r;
}

}  // namespace

std::pair<MeanSpec, MeanSpec> TrialBundle::ordered_pair() const {
  const auto r1 = power_exponent(sigma1.f), r2 = power_exponent(sigma2.f);
  if (r1 && r2 && sigma1.f.v == sigma2.f.v) {
    return *r1 <= *r2 ? std::make_pair(sigma1, sigma2) : std::make_pair(sigma2, sigma1);
  }
  switch (scalar_order(sigma1, sigma2)) {
    case MeanOrder::Leq: return {sigma1, sigma2};
    case MeanOrder::Geq: return {sigma2, sigma1};
    case MeanOrder::Incomparable: break;
  }
  throw Error(ErrorKind::HypothesisUnsatisfiable, "means " + sigma1.name + " and " + sigma2.name + " are incomparable");
}

std::string TrialBundle::params() const {
  std::string s = "p=" + num(p) + ";v=" + num(v) + ";s1=" + sigma1.name + ";s2=" + sigma2.name +
                  ";s=" + sigma_free.name + ";s_low=" + sigma_below_arith.name + ";f=" + f.id() +
                  ";phi=" + phi.id();
  return s;
}

std::vector<std::string> resolve_checks(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  for (const auto& id : ids) {
    if (id == "all") {
      for (const auto& d : registry()) out.push_back(d.id);
    } else if (find_check(id)) {
      out.push_back(id);
    } else {
      throw Error(ErrorKind::Config, "unknown check id '" + id + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::Config, "no checks selected");
  std::vector<std::string> unique;
  for (const auto& id : out) {
    if (std::find(unique.begin(), unique.end(), id) == unique.end()) unique.push_back(id);
  }
  return unique;
}

std::uint64_t trial_seed(std::uint64_t master, const std::string& check, int cell, int trial) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : check) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::uint64_t s = mix_seed(master, h);
  s = mix_seed(s, static_cast<std::uint64_t>(cell));
  return mix_seed(s, static_cast<std::uint64_t>(trial));
}

TrialBundle make_bundle(const std::string& check, int n, double theta, double m, double M, std::uint64_t seed,
                        int trial_index, const SuiteConfig& config) {
  const CheckDef* def = find_check(check);
  if (!def) throw Error(ErrorKind::Config, "unknown check id '" + check + "'");
  kantorovich(m, M);
  Rng rng(seed);
  TrialBundle b;
  b.check = check;
  b.seed = seed;
  b.n = n;
  b.theta = theta;
  b.m = m;
  b.M = M;
  const std::vector<double>& ps = config.p_values.empty() ? def->p_values : config.p_values;
  b.p = ps.empty() ? 1.0 : ps[std::min(ps.size() - 1, static_cast<std::size_t>(uniform01(rng) * ps.size()))];
  b.f = random_catalog_fn(rng);
  b.sigma_free = MeanSpec(random_catalog_fn(rng));
  b.sigma_below_arith = MeanSpec(random_below_arithmetic(rng));

  if (n == 1) {
    // Scalar extremal configurations: Re a, Re b in {m, M} on the sector rays, exponents at +-1.
    static const double weights[] = {0.5, 0.25, 0.75, 0.0, 1.0};
    const int signs = theta > 0 ? 2 : 1;
    int k = trial_index;
    const double ra = (k % 2) ? M : m;
    k /= 2;
    const double rb = (k % 2) ? M : m;
    k /= 2;
    const double sa = (k % signs) ? -1.0 : 1.0;
    k /= signs;
    const double sb = (k % signs) ? -1.0 : 1.0;
    k /= signs;
    const double r1 = (k % 2) ? 1.0 : -1.0;
    k /= 2;
    const double r2 = (k % 2) ? 1.0 : -1.0;
    k /= 2;
    b.v = weights[k % 5];
    const double t = std::tan(theta);
    b.A = CMatrixd::Constant(1, 1, std::complex<double>(ra, sa * t * ra));
    b.B = CMatrixd::Constant(1, 1, std::complex<double>(rb, sb * t * rb));
    b.A_inv_bounded = CMatrixd::Constant(1, 1, 1.0 / b.A(0, 0));
    b.B_inv_bounded = CMatrixd::Constant(1, 1, 1.0 / b.B(0, 0));
    b.sigma1 = MeanSpec(canonical_power(r1, b.v));
    b.sigma2 = MeanSpec(canonical_power(r2, b.v));
    b.phi = PULMap::identity(1);
    return b;
  }

  b.v = uniform01(rng);
  b.sigma1 = MeanSpec(canonical_power(sample_exponent(rng), b.v));
  b.sigma2 = MeanSpec(canonical_power(sample_exponent(rng), b.v));
  const SamplerOptions so{config.boundary_fraction};
  b.A = sample_sector(n, theta, m, M, rng, so).A;
  b.B = sample_sector(n, theta, m, M, rng, so).A;
  b.A_inv_bounded = inverse<double>(sample_sector(n, theta, m, M, rng, so).A);
  b.B_inv_bounded = inverse<double>(sample_sector(n, theta, m, M, rng, so).A);
  b.phi = PULMap::random(n, rng);
  return b;
}

CheckResult run_check(const TrialBundle& bundle, const EvalOptions& opts) {
  try {
    return evaluate_trial(bundle, opts);
  } catch (const Error& e) {
    CheckResult r = blank_result(bundle);
    r.pass = false;
    r.slack = r.ratio = std::numeric_limits<double>::quiet_NaN();
    r.error = std::string(to_string(e.kind())) + ": " + e.what();
    r.witness = write_witness(bundle, r);
    return r;
  }
}

SuiteResult run_suite(const SuiteConfig& config) {
  const std::vector<std::string> checks = resolve_checks(config.checks);
  const std::vector<Cell> cells = cells_of(config.grid);
  if (cells.empty() || config.grid.trials < 1) throw Error(ErrorKind::Config, "empty grid");
  for (const auto& c : cells) {
    if (c.n < 1) throw Error(ErrorKind::Config, "dimensions must be positive");
    if (!(c.theta >= 0 && c.theta < std::acos(-1.0) / 2)) throw Error(ErrorKind::Config, "theta must lie in [0, pi/2)");
    if (!(c.m > 0 && c.m <= c.M)) throw Error(ErrorKind::Config, "bounds need 0 < m <= M");
  }

  struct Task {
    std::size_t check;
    std::size_t cell;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < checks.size(); ++k) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      for (int t = 0; t < config.grid.trials; ++t) tasks.push_back({k, c, t});
    }
  }

  SuiteResult out;
  out.results.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      try {
        out.results[i] = run_trial(checks[t.check], cells[t.cell], static_cast<int>(t.cell), t.trial, config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        next = tasks.size();
        return;
      }
    }
  };
  const int nthreads = std::min<int>(thread_count(config.threads), static_cast<int>(tasks.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  for (const auto& id : checks) {
    CheckSummary s;
    s.check = id;
    s.min_slack = std::numeric_limits<double>::infinity();
    s.max_ratio = -std::numeric_limits<double>::infinity();
    for (const auto& r : out.results) {
      if (r.check != id) continue;
      ++s.trials;
      if (r.pass) {
        ++s.passes;
      } else {
        ++s.failures;
        s.failing_seeds.push_back(r.seed);
      }
      if (!std::isnan(r.slack)) s.min_slack = std::min(s.min_slack, r.slack);
      if (std::isfinite(r.ratio)) s.max_ratio = std::max(s.max_ratio, r.ratio);
    }
    out.failures += s.failures;
    out.summary.push_back(std::move(s));
  }
  return out;
}

std::vector<TightnessReport> tightness(const SuiteConfig& config) {
  const SuiteResult suite = run_suite(config);
  using Key = std::tuple<std::string, std::string, int, double, double, double>;
  std::map<Key, TightnessReport> best;
  std::vector<Key> order;
  for (const auto& r : suite.results) {
    for (const auto& c : r.clauses) {
      if (!std::isfinite(c.ratio)) continue;
      const Key key{r.check, c.name, r.n, r.theta, r.m, r.M};
      auto it = best.find(key);
      if (it == best.end()) {
        order.push_back(key);
        best[key] = {r.check, c.name, r.n, r.theta, r.m, r.M, c.constant, c.ratio, r.seed};
      } else if (c.ratio > it->second.empirical_max_ratio) {
        it->second.empirical_max_ratio = c.ratio;
        it->second.theoretical_constant = c.constant;
        it->second.attaining_seed = r.seed;
      }
    }
  }
  std::vector<TightnessReport> out;
  for (const auto& k : order) out.push_back(best[k]);
  return out;
}

int mutation_test(SuiteConfig config, double factor, const std::string& clause) {
  if (!(factor > 0)) throw Error(ErrorKind::Config, "mutation factor must be positive");
  config.eval.factor = factor;
  config.eval.mutated_clause = clause;
  // A violated mutated constant is a property of the constant, not of rounding.
  config.eval.reevaluate = false;
  return run_suite(config).failures;
}

}  // namespace sectorlab
