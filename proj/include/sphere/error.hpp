#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphere {

/// Failure categories surfaced by the library. The CLI reports these by name.
enum class ErrorKind {
  ParseError,
  InvalidSpec,
  InvalidCurve,
  PoleHasNoCoordinate,
  PointOnCurve,
  NonIntegralWinding,
  FixedPointOnCurve,
  CertificateIndexMismatch,
  RadiusTooLarge,
  PreimageClusterTooTight,
  DegreeMismatch,
  ImageHitsPole,
  UnsupportedSpec,
  NotStraightened,
  BoundaryTouchesImage,
  NotRepelling,
  LiftDiscontinuity,
  MNotFound,
  IndexMismatch,
  DegreeCapExceeded,
  NumericalFailure,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sphere
