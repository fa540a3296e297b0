#include "sumprod/config.hpp"

#include <cstdlib>
#include <string>
#include <thread>

namespace sumprod {

std::size_t RunConfig::resolved_threads() const {
  if (threads != 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

RunConfig config_from_environment() {
  RunConfig config;
  if (const char* env = std::getenv("SUMPRODLAB_BUDGET")) {
    try {
      const unsigned long long value = std::stoull(env);
      if (value > 0) config.tuple_budget = value;
    } catch (const std::exception&) {
      // Ignored: a malformed override leaves the default in place.
    }
  }
  return config;
}

}  // namespace sumprod
