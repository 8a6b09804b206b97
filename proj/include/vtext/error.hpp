#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vtext {

enum class ErrorCode {
  NoFrames,
  DimensionMismatch,
  DecodeError,
  FrameTooSmall,
  RectOutOfBounds,
  WindowExceedsSequence,
  CaptionOutOfBounds,
  InvalidConfig,
  IoError,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as vtext::Error; the code is stable and is
// what the CLI prints as the diagnostic prefix.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoFrames: return "NoFrames";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DecodeError: return "DecodeError";
    case ErrorCode::FrameTooSmall: return "FrameTooSmall";
    case ErrorCode::RectOutOfBounds: return "RectOutOfBounds";
    case ErrorCode::WindowExceedsSequence: return "WindowExceedsSequence";
    case ErrorCode::CaptionOutOfBounds: return "CaptionOutOfBounds";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace vtext
