// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace beamsynth {

// Input outside the mathematical domain of a formula (e.g. cap area larger
// than the sphere).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Geometry that has no physical solution (coverage edge beyond the horizon).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Ground point that cannot be seen from the satellite within the field of view.
class VisibilityError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Caller broke an operation's precondition (dimension mismatch, zero power...).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Invalid configuration value (array, GA or scenario settings).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A beam metric could not be extracted from a sampled pattern.
class MetricError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. `what()` carries the file location when known.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that violates a documented invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace beamsynth
