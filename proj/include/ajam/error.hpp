#pragma once

#include <stdexcept>
#include <string>

namespace ajam {

// Numeric values are shared with the C API (ajam.h), keep them in sync.
enum class ErrorCode : int {
  kInvalidArgument = 1,
  kUnsupportedModulation = 2,
  kTrainingDiverged = 3,
  kAttackSaturated = 4,
  kIo = 5,
  kFormat = 6,
};

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::kInvalidArgument, what) {}
};

class UnsupportedModulation : public Error {
public:
  explicit UnsupportedModulation(const std::string& what)
      : Error(ErrorCode::kUnsupportedModulation, what) {}
};

class TrainingDiverged : public Error {
public:
  explicit TrainingDiverged(const std::string& what) : Error(ErrorCode::kTrainingDiverged, what) {}
};

class AttackSaturated : public Error {
public:
  explicit AttackSaturated(const std::string& what) : Error(ErrorCode::kAttackSaturated, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorCode::kIo, what) {}
};

class FormatError : public Error {
public:
  explicit FormatError(const std::string& what) : Error(ErrorCode::kFormat, what) {}
};

}  // namespace ajam
