#include "sectorlab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sectorlab {

using nlohmann::json;

namespace {

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

[[noreturn]] void parse_fail(int line, int column, const std::string& what) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

double parse_real(const std::string& s, int line, int column) {
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') parse_fail(line, column, "bad number '" + s + "'");
  return x;
}

std::complex<double> parse_entry(std::string tok, int line, int column) {
  if (tok.size() >= 2 && tok.front() == '(' && tok.back() == ')') tok = tok.substr(1, tok.size() - 2);
  if (tok.empty()) parse_fail(line, column, "empty entry");
  const char last = tok.back();
  if (last != 'j' && last != 'i') return {parse_real(tok, line, column), 0.0};
  tok.pop_back();
  // Split at the last sign that is not an exponent sign and not the leading one.
  std::size_t split = std::string::npos;
  for (std::size_t k = tok.size(); k-- > 1;) {
    if ((tok[k] == '+' || tok[k] == '-') && tok[k - 1] != 'e' && tok[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, line, column);
  };
  if (split == std::string::npos) return {0.0, imag_of(tok)};
  return {parse_real(tok.substr(0, split), line, column), imag_of(tok.substr(split))};
}

}  // namespace

std::string report_json(const SuiteConfig& config, const SuiteResult& suite) {
  json j;
  j["schema"] = "sectorlab.report/1";
  j["seed"] = config.seed;
  j["trials_per_cell"] = config.grid.trials;
  j["dims"] = config.grid.dims;
  j["thetas"] = config.grid.thetas;
  json bounds = json::array();
  for (const auto& [m, M] : config.grid.bounds) bounds.push_back({m, M});
  j["bounds"] = bounds;
  j["tolerance"] = {{"rel", config.eval.tol.rel}, {"abs", config.eval.tol.abs}};
  j["drop_sec"] = config.eval.drop_sec;
  json checks = json::array();
  for (const auto& s : suite.summary) {
    json c;
    c["check"] = s.check;
    if (const CheckDef* d = find_check(s.check)) c["statement"] = d->statement;
    c["trials"] = s.trials;
    c["passes"] = s.passes;
    c["failures"] = s.failures;
    c["min_slack"] = finite_or_null(s.min_slack);
    c["max_ratio"] = finite_or_null(s.max_ratio);
    c["failing_seeds"] = s.failing_seeds;
    checks.push_back(c);
  }
  j["checks"] = checks;
  j["failures"] = suite.failures;
  return j.dump(2) + "\n";
}

std::string slack_csv(const SuiteResult& suite) {
  std::string out = "check,seed,n,theta,m,M,params,slack,ratio\n";
  for (const auto& r : suite.results) {
    out += r.check + "," + std::to_string(r.seed) + "," + std::to_string(r.n) + "," + g17(r.theta) + "," + g17(r.m) +
           "," + g17(r.M) + "," + csv_quote(r.params) + "," + g17(r.slack) + "," + g17(r.ratio) + "\n";
  }
  return out;
}

std::string tightness_json(const std::vector<TightnessReport>& rows) {
  json arr = json::array();
  for (const auto& t : rows) {
    arr.push_back({{"check", t.check},
                   {"clause", t.clause},
                   {"n", t.n},
                   {"theta", t.theta},
                   {"m", t.m},
                   {"M", t.M},
                   {"theoretical_constant", finite_or_null(t.theoretical_constant)},
                   {"empirical_max_ratio", finite_or_null(t.empirical_max_ratio)},
                   {"attaining_seed", t.attaining_seed}});
  }
  json j;
  j["schema"] = "sectorlab.tightness/1";
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

std::string mutation_json(const std::vector<MutationRow>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back({{"factor", r.factor}, {"clause", r.clause.empty() ? "*" : r.clause}, {"violations", r.violations},
                   {"trials", r.trials}});
  }
  json j;
  j["schema"] = "sectorlab.mutation/1";
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

CMatrixd parse_matrix(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  long n = -1;
  CMatrixd a;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    if (n < 0) {
      const std::string tok = line.substr(first, line.find_last_not_of(" \t") + 1 - first);
      char* end = nullptr;
      n = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0' || n < 1) parse_fail(line_no, static_cast<int>(first) + 1, "expected a positive dimension");
      a.resize(n, n);
      continue;
    }
    if (row >= n) parse_fail(line_no, static_cast<int>(first) + 1, "more than n rows");
    Eigen::Index col = 0;
    std::size_t pos = 0;
    while (true) {
      pos = line.find_first_not_of(" \t,", pos);
      if (pos == std::string::npos) break;
      const std::size_t stop = line.find_first_of(" \t,", pos);
      const std::string tok = line.substr(pos, stop == std::string::npos ? std::string::npos : stop - pos);
      if (col >= n) parse_fail(line_no, static_cast<int>(pos) + 1, "more than n entries in row");
      a(row, col++) = parse_entry(tok, line_no, static_cast<int>(pos) + 1);
      if (stop == std::string::npos) break;
      pos = stop;
    }
    if (col < n) parse_fail(line_no, static_cast<int>(line.size()) + 1, "expected " + std::to_string(n) + " entries");
    ++row;
  }
  if (n < 0) parse_fail(line_no + 1, 1, "missing dimension line");
  if (row < n) parse_fail(line_no + 1, 1, "expected " + std::to_string(n) + " rows");
  return a;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Config, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Config, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Config, "write failed for '" + path + "'");
}

}  // namespace sectorlab
