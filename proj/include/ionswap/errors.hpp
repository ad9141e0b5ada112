#pragma once

#include <stdexcept>
#include <string>

namespace ionswap {

// Error taxonomy shared by the C API status codes and the CLI exit status.
enum class ErrorCode : int {
  ok = 0,
  infeasible = 1,  // the requested physics has no solution
  config = 2,      // bad input file, units, or arguments
  numerics = 3,    // solver/integrator breakdown
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

class InfeasibleError : public Error {
public:
  explicit InfeasibleError(const std::string& what)
      : Error(ErrorCode::infeasible, what) {}
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCode::config, what) {}
};

class NumericsError : public Error {
public:
  explicit NumericsError(const std::string& what)
      : Error(ErrorCode::numerics, what) {}
};

}  // namespace ionswap
