#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arum {

// Stable numeric codes shared by the C API and the CLI exit status.
enum class ErrorCode : int {
  Internal = 1,
  Parse = 2,
  Validation = 3,
  ArgmaxTie = 4,
  Infeasible = 5,
  NoKMaximalPoint = 6,
  FullConsideration = 7,
  NotCartesianProduct = 8,
  UnsupportedAnalysis = 9,
  Io = 10,
  InvalidArgument = 11,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorCode::Validation, what) {}
};

// A model atom has two alternatives tied at the max; the instance violates the
// no-ties assumption and cannot be evaluated.
class ArgmaxTieError : public Error {
 public:
  ArgmaxTieError(std::size_t atom_index, const std::string& at)
      : Error(ErrorCode::ArgmaxTie,
              "argmax tie in atom " + std::to_string(atom_index) + " at " + at),
        atom_index_(atom_index) {}
  std::size_t atom_index() const { return atom_index_; }

 private:
  std::size_t atom_index_;
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what) : Error(ErrorCode::Infeasible, what) {}
};

class NoKMaximalPointError : public Error {
 public:
  explicit NoKMaximalPointError(int k)
      : Error(ErrorCode::NoKMaximalPoint,
              "grid contains no " + std::to_string(k) + "-maximal point") {}
};

class FullConsiderationError : public Error {
 public:
  explicit FullConsiderationError(int k)
      : Error(ErrorCode::FullConsideration,
              "alternative " + std::to_string(k) +
                  " is considered with probability 1; no witness exists") {}
};

class NotCartesianProductError : public Error {
 public:
  explicit NotCartesianProductError(const std::string& what)
      : Error(ErrorCode::NotCartesianProduct, what) {}
};

class UnsupportedAnalysisError : public Error {
 public:
  explicit UnsupportedAnalysisError(const std::string& what)
      : Error(ErrorCode::UnsupportedAnalysis, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::Io, what) {}
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

}  // namespace arum
