#pragma once

#include <stdexcept>
#include <string>

namespace tsselect {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class CsvError : public Error {
public:
  using Error::Error;
};

class EmbeddingError : public Error {
public:
  using Error::Error;
};

class PartitionError : public Error {
public:
  using Error::Error;
};

class PlanError : public Error {
public:
  using Error::Error;
};

class FitError : public Error {
public:
  using Error::Error;
};

class PredictError : public Error {
public:
  using Error::Error;
};

class MetricError : public Error {
public:
  using Error::Error;
};

/// Oracle test error is exactly zero while the selected model's is not;
/// the relative loss is undefined for that series.
class UndefinedLossError : public MetricError {
public:
  using MetricError::MetricError;
};

class SelectionError : public Error {
public:
  using Error::Error;
};

class OracleError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace tsselect
