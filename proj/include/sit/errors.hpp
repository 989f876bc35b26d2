// Error taxonomy shared by the library and the CLI.
//
// ConfigError:     invalid parameters or configuration input (CLI exit 2).
// NumericalError:  a computation lost validity at runtime, e.g. positivity
//                  clipping above threshold or an ill-posed bracket (exit 3).
// ScientificError: a well-posed check ran and its scientific assertion
//                  failed, e.g. a residual sign violation (exit 1).
#pragma once

#include <stdexcept>
#include <string>

namespace sit {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ScientificError : std::runtime_error {
  explicit ScientificError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sit
