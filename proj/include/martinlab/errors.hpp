#pragma once

#include <stdexcept>
#include <string>

namespace martinlab {

/// Requested combination (d, alpha) is outside what a kernel supports.
struct capability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Too many walks hit their step budget for the estimate to be trusted.
struct reliability_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Rejection sampling exhausted its budget; the region is (near) empty.
struct empty_region_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Experiment configuration failed schema validation.  `where` is a
/// slash-separated path to the offending field.
struct config_error : std::runtime_error {
  config_error(std::string where_, const std::string& what_)
      : std::runtime_error(where_ + ": " + what_), where(std::move(where_)) {}
  std::string where;
};

}  // namespace martinlab
