#include "mwdlab/error.hpp"

namespace mwdlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::TailTooFat: return "TailTooFat";
    case ErrorKind::OscillationGuard: return "OscillationGuard";
    case ErrorKind::SingularKernel: return "SingularKernel";
    case ErrorKind::ZeroAtOrigin: return "ZeroAtOrigin";
    case ErrorKind::DegenerateWindowPair: return "DegenerateWindowPair";
    case ErrorKind::NotRightRegular: return "NotRightRegular";
    case ErrorKind::BadIntervals: return "BadIntervals";
    case ErrorKind::GridTooLarge: return "GridTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

bool Error::is_numerical_guard() const noexcept {
  switch (kind_) {
    case ErrorKind::SingularMatrix:
    case ErrorKind::TailTooFat:
    case ErrorKind::OscillationGuard:
    case ErrorKind::SingularKernel:
    case ErrorKind::ZeroAtOrigin:
    case ErrorKind::DegenerateWindowPair:
    case ErrorKind::NotRightRegular:
      return true;
    default:
      return false;
  }
}

void fail(ErrorKind kind, const std::string& detail) { throw Error(kind, detail); }

}  // namespace mwdlab
