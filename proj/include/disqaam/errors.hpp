#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace disqaam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidSizeError : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class InvalidEdgeError : public Error {
 public:
  using Error::Error;
};

/// Dimension mismatch between a vector and the object it is applied to.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operation reserved for one agent role was requested for the other.
class RoleError : public Error {
 public:
  using Error::Error;
};

/// A modelling hypothesis (e.g. 0 < mu <= L) does not hold.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

/// A runtime invariant check failed while running in strict mode.
class InvariantError : public Error {
 public:
  using Error::Error;
};

struct ConfigIssue {
  std::string path;
  std::string message;
};

/// Configuration rejected; carries every problem found, each with a field path.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues)
      : Error(format(issues)), issues_(std::move(issues)) {}
  ConfigError(std::string path, std::string message)
      : ConfigError(std::vector<ConfigIssue>{{std::move(path), std::move(message)}}) {}

  const std::vector<ConfigIssue>& issues() const { return issues_; }

 private:
  static std::string format(const std::vector<ConfigIssue>& issues) {
    std::string out = "invalid configuration:";
    for (const auto& issue : issues) {
      out += "\n  ";
      out += issue.path.empty() ? std::string("<root>") : issue.path;
      out += ": ";
      out += issue.message;
    }
    return out;
  }

  std::vector<ConfigIssue> issues_;
};

}  // namespace disqaam
