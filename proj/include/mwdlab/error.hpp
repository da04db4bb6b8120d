#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mwdlab {

enum class ErrorKind {
  SingularMatrix,
  OutOfRange,
  TailTooFat,
  OscillationGuard,
  SingularKernel,
  ZeroAtOrigin,
  DegenerateWindowPair,
  NotRightRegular,
  BadIntervals,
  GridTooLarge,
  InvalidArgument,
  Unsupported,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library error. The message always starts with the kind name so the CLI
/// can surface it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

  /// True for the numerical guards the CLI maps to exit code 3.
  bool is_numerical_guard() const noexcept;

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& detail);

}  // namespace mwdlab
