#pragma once

// Output files of the command-line tool and the matrix input format.

#include <string>
#include <vector>

#include "sectorlab/verifier.hpp"

namespace sectorlab {

/// report.json: per-check trial counts, slack/ratio extremes and failing seeds.
std::string report_json(const SuiteConfig& config, const SuiteResult& suite);

/// slack.csv: one row per trial, columns check,seed,n,theta,m,M,params,slack,ratio.
std::string slack_csv(const SuiteResult& suite);

std::string tightness_json(const std::vector<TightnessReport>& rows);

struct MutationRow {
  double factor = 1;
  std::string clause;
  int violations = 0;
  int trials = 0;
};

std::string mutation_json(const std::vector<MutationRow>& rows);

/// Matrix text format: first line n, then n lines of n entries such as "1.5", "-2j" or "1+0.5j".
/// Errors name the line and column.
CMatrixd parse_matrix(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sectorlab
