#pragma once

#include <stdexcept>
#include <string>

namespace riglab {

// Failure classes used across the library. The CLI maps these to exit codes:
// input/consistency problems -> 2, resource/precision exhaustion -> 3.
enum class Errc {
  PrecisionExceeded,
  GridTooCoarse,
  InvalidSpec,
  ScheduleInconsistent,
  DepthTooLarge,
  PatternMismatch,
  InsufficientPrecision,
  DepthInsufficient,
  PrefixChainMismatch,
  NotAChain,
  RatiosTooSmall,
  SupplyExhausted,
  SeparationTooSmall,
  OracleScaleExceeded,
  NotSymmetrized,
  IndexMissing,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::PrecisionExceeded: return "PrecisionExceeded";
    case Errc::GridTooCoarse: return "GridTooCoarse";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::ScheduleInconsistent: return "ScheduleInconsistent";
    case Errc::DepthTooLarge: return "DepthTooLarge";
    case Errc::PatternMismatch: return "PatternMismatch";
    case Errc::InsufficientPrecision: return "InsufficientPrecision";
    case Errc::DepthInsufficient: return "DepthInsufficient";
    case Errc::PrefixChainMismatch: return "PrefixChainMismatch";
    case Errc::NotAChain: return "NotAChain";
    case Errc::RatiosTooSmall: return "RatiosTooSmall";
    case Errc::SupplyExhausted: return "SupplyExhausted";
    case Errc::SeparationTooSmall: return "SeparationTooSmall";
    case Errc::OracleScaleExceeded: return "OracleScaleExceeded";
    case Errc::NotSymmetrized: return "NotSymmetrized";
    case Errc::IndexMissing: return "IndexMissing";
  }
  return "UnknownError";
}

// True for failures caused by resource or precision limits rather than bad input.
inline bool errc_is_resource(Errc c) {
  switch (c) {
    case Errc::PrecisionExceeded:
    case Errc::DepthTooLarge:
    case Errc::InsufficientPrecision:
    case Errc::DepthInsufficient:
    case Errc::SupplyExhausted:
    case Errc::SeparationTooSmall:
    case Errc::OracleScaleExceeded:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace riglab
