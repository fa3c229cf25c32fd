#pragma once

#include <stdexcept>
#include <string>

namespace spinlab {

// Stable failure categories. The C API maps these 1:1 onto spinlab_status
// values, so the numbering here must not change between releases.
enum class ErrorCode : int {
  Ok = 0,
  SelfLoop = 1,
  DuplicateEdge = 2,
  Disconnected = 3,
  InvalidParameter = 4,
  SameVertex = 5,
  DimensionMismatch = 6,
  SolverFailure = 7,
  TooLarge = 8,
  WrongN = 9,
  UnsupportedN = 10,
  InvalidDepth = 11,
  NonpositiveBeta = 12,
  InsufficientSamples = 13,
  ConvergenceFailure = 14,
  MissingVerdict = 15,
  IoError = 16,
  ParseError = 17,
  InternalError = 18,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::WrongN: return "WrongN";
    case ErrorCode::UnsupportedN: return "UnsupportedN";
    case ErrorCode::InvalidDepth: return "InvalidDepth";
    case ErrorCode::NonpositiveBeta: return "NonpositiveBeta";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::MissingVerdict: return "MissingVerdict";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalError: return "InternalError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace spinlab
