#pragma once

#include <cstddef>
#include <cstdint>

namespace sumprod {

/// Resource limits and parallelism for the enumerating operations.
struct RunConfig {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  std::size_t threads = 0;
  /// Maximum number of evaluated k-tuples in energy enumerations.
  std::uint64_t tuple_budget = 100'000'000;
  /// Maximum number of elements in an intermediate product or sum set.
  std::uint64_t set_budget = 10'000'000;

  std::size_t resolved_threads() const;
};

/// RunConfig with tuple_budget taken from SUMPRODLAB_BUDGET when that
/// variable holds a positive integer.
RunConfig config_from_environment();

}  // namespace sumprod
