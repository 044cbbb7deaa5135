#pragma once

#include <cstddef>
#include <stdexcept>

namespace latdesign {

/// Raised when a computation would exceed a configured resource limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Worker count used when an operation is given workers <= 0. Reads the
/// LATDESIGN_WORKERS environment variable once, else the OpenMP default.
int default_workers();
void set_default_workers(int workers);
int resolve_workers(int requested);

}  // namespace latdesign
