#pragma once

#include <stdexcept>
#include <string>

namespace novikov2c {

/// Invalid grid, scenario or run configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API misuse: mismatched grids, out-of-range queries, missing inputs.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quantity that is undefined for the given input (e.g. a ratio with a zero
/// denominator, a logarithm outside its domain).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace novikov2c
