#pragma once

#include "dwork/deformation.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dwork {

enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 2,
  kExitAssumption = 3,
  kExitInvariant = 4,
};

struct JobConfig {
  int n = 0;
  int k = 0;
  std::vector<int> degrees;
  std::vector<std::string> G;
  std::optional<std::vector<std::string>> H;
  int truncation_order = 6;
  std::optional<std::string> monomial_order;
  std::optional<std::string> h;
  int slack = QuotientPresentation::kDefaultSlack;
  std::optional<std::string> out;
};

JobConfig parse_config(const nlohmann::json& doc);
JobConfig load_config(const std::string& path);

/// Problem assembled from a config: context, potential and presentation.
struct Problem {
  JobConfig config;
  ContextPtr ctx;
  DworkData D;
  QuotientPresentation P;
};

Problem make_problem(const JobConfig& config);

PeriodMatrix parse_period_matrix(const nlohmann::json& doc);
BaseChange parse_base_change(const nlohmann::json& doc);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwork
