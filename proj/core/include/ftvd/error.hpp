#pragma once

#include <stdexcept>
#include <string>

namespace ftvd {

enum class Errc {
  kKernelTooLarge,
  kBadSpec,
  kSingularSystem,
  kNonpositiveThreshold,
  kDegenerateReference,
  kMissingScores,
  kShapeMismatch,
  kTooLarge,
  kNoConvergence,
  kIo,
  kInvalidArgument,
};

const char* to_string(Errc code) noexcept;

/// Single exception type for the library; `code()` tells callers which
/// failure occurred so the CLI can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for failures raised by the numerics rather than by bad input or IO.
  bool is_numerical() const noexcept {
    return code_ == Errc::kSingularSystem || code_ == Errc::kNoConvergence;
  }

 private:
  Errc code_;
};

}  // namespace ftvd
