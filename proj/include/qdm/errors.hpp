#pragma once

#include <stdexcept>
#include <string>

namespace qdm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;

  /// Where the error surfaced, outermost first; empty when raised directly.
  const std::string& context() const { return context_; }
  void add_context(const std::string& where) { context_ = context_.empty() ? where : where + ": " + context_; }

 private:
  std::string context_;
};

class BasisError : public Error {
 public:
  using Error::Error;
};

class UnitarityError : public Error {
 public:
  UnitarityError(const std::string& what, double deviation) : Error(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class EmptySubspaceError : public Error {
 public:
  EmptySubspaceError(const std::string& what, double weight) : Error(what), weight_(weight) {}
  double weight() const { return weight_; }

 private:
  double weight_;
};

class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double error_estimate)
      : Error(what), error_estimate_(error_estimate) {}
  double error_estimate() const { return error_estimate_; }

 private:
  double error_estimate_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateBasisError : public Error {
 public:
  using Error::Error;
};

class StiffnessError : public Error {
 public:
  StiffnessError(const std::string& what, double time_reached_ns)
      : Error(what), time_reached_ns_(time_reached_ns) {}
  double time_reached_ns() const { return time_reached_ns_; }

 private:
  double time_reached_ns_;
};

/// Thrown when the Liouvillian null space is not one-dimensional.
class DegenerateSteadyStateError : public Error {
 public:
  DegenerateSteadyStateError(const std::string& what, int null_count, double gap)
      : Error(what), null_count_(null_count), gap_(gap) {}
  int null_count() const { return null_count_; }
  /// Magnitude of the smallest eigenvalue outside the null cluster.
  double gap() const { return gap_; }

 private:
  int null_count_;
  double gap_;
};

class TimeoutError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownScenarioError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdm
