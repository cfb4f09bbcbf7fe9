#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dynemb {

enum class ErrorCode {
  InvalidArgument,
  MalformedLine,
  EmptyInput,
  DegenerateRange,
  EmptyWeights,
  NonPositiveWeight,
  WindowTooLarge,
  DimensionMismatch,
  OutOfVocab,
  EmptyCorpus,
  ShapeMismatch,
  TooFewSnapshots,
  IoError,
  FormatError,
  InsufficientNonNeighbors,
  MissingNode,
  SingleClass,
  NotEnoughNegatives,
  NoTrainingData,
  LengthMismatch,
};

std::string_view to_string(ErrorCode code);

// Every module reports failures through this type. `position` carries a line
// number or byte offset when the failure points into an input document.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        position_(position) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> position_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateRange: return "DegenerateRange";
    case ErrorCode::EmptyWeights: return "EmptyWeights";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutOfVocab: return "OutOfVocab";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::TooFewSnapshots: return "TooFewSnapshots";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::InsufficientNonNeighbors: return "InsufficientNonNeighbors";
    case ErrorCode::MissingNode: return "MissingNode";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::NotEnoughNegatives: return "NotEnoughNegatives";
    case ErrorCode::NoTrainingData: return "NoTrainingData";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
  }
  return "Unknown";
}

}  // namespace dynemb
