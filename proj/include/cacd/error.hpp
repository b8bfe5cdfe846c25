// Copyright 2026 The cacd Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef CACD_ERROR_HPP
#define CACD_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cacd {

enum class Errc {
  InvalidArgument,
  InvalidDistribution,
  LengthMismatch,
  ZeroActivityNode,
  PrecisionExceeded,
  InvalidSet,
  Parse,
};

constexpr const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidDistribution: return "InvalidDistribution";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::ZeroActivityNode: return "ZeroActivityNode";
    case Errc::PrecisionExceeded: return "PrecisionExceeded";
    case Errc::InvalidSet: return "InvalidSet";
    case Errc::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cacd

#endif  // CACD_ERROR_HPP
