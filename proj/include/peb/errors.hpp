#pragma once

#include <stdexcept>
#include <string>

namespace peb {

/// Scenario/configuration file problems (bad key, bad unit, missing section).
class config_error : public std::runtime_error {
 public:
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Physically invalid request (near-field guard, endfire singular point,
/// out-of-range index, contract violation on an operation input).
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// File system failures while writing or reading artifacts.
class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure inside an algorithm (singular nuisance block,
/// non-finite finite-difference evaluation).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace peb
