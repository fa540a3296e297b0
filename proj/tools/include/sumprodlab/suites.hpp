#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumprod/config.hpp"
#include "sumprodlab/report.hpp"

namespace sumprodlab {

struct SuiteOptions {
  std::uint64_t seed = 1;
  int n_max = 20;  // largest |A| in the k = 2 closed-form suite
  sumprod::RunConfig config;
};

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> messages;  // first few failures
  Json details = Json::object();
  double elapsed_ms = 0.0;
  bool passed() const { return failures == 0; }
};

/// Every suite name in execution order (excluding "all").
const std::vector<std::string>& suite_names();

/// Throws sumprod::InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

}  // namespace sumprodlab
