#pragma once

#include <stdexcept>
#include <string>

namespace availsim {

/// Statevector/oracle/prep dimensions disagree.
class DimensionMismatch : public std::invalid_argument {
  public:
    explicit DimensionMismatch(const std::string &what)
        : std::invalid_argument(what) {}
};

/// The oracle's good subspace is empty where the operation requires t >= 1,
/// or a = 0 where a retrieval time is requested (infinite-time signal).
class NoGoodItems : public std::domain_error {
  public:
    explicit NoGoodItems(const std::string &what) : std::domain_error(what) {}
};

/// Requested simulation exceeds the configured dimension caps.
class CapExceeded : public std::length_error {
  public:
    explicit CapExceeded(const std::string &what) : std::length_error(what) {}
};

/// Scenario-level failure (empty partition, degenerate weights).
class ScenarioError : public std::domain_error {
  public:
    explicit ScenarioError(const std::string &what) : std::domain_error(what) {}
};

/// Lexicon file does not conform to the line format.
class LexiconError : public std::domain_error {
  public:
    explicit LexiconError(const std::string &what) : std::domain_error(what) {}
};

} // namespace availsim
