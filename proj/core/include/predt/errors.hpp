#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace predt {

/// Precondition violation on a mathematical domain (bad exponent range,
/// non-finite argument, invalid gain constraint input, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numeric evaluation produced a non-finite intermediate. Carries the state
/// at which the evaluation blew up so simulation/certification callers can
/// report where things went wrong.
class evaluation_error : public std::runtime_error {
 public:
  evaluation_error(const std::string& what, std::vector<double> state)
      : std::runtime_error(what), state_(std::move(state)) {}
  explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}

  [[nodiscard]] const std::vector<double>& state() const noexcept { return state_; }

 private:
  std::vector<double> state_;
};

/// Malformed configuration input (CLI or config file).
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Statistical estimation could not produce a result (e.g. every run diverged).
class estimation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace predt
