#include "sphere/error.hpp"

namespace sphere {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidCurve: return "InvalidCurve";
    case ErrorKind::PoleHasNoCoordinate: return "PoleHasNoCoordinate";
    case ErrorKind::PointOnCurve: return "PointOnCurve";
    case ErrorKind::NonIntegralWinding: return "NonIntegralWinding";
    case ErrorKind::FixedPointOnCurve: return "FixedPointOnCurve";
    case ErrorKind::CertificateIndexMismatch: return "CertificateIndexMismatch";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::PreimageClusterTooTight: return "PreimageClusterTooTight";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::ImageHitsPole: return "ImageHitsPole";
    case ErrorKind::UnsupportedSpec: return "UnsupportedSpec";
    case ErrorKind::NotStraightened: return "NotStraightened";
    case ErrorKind::BoundaryTouchesImage: return "BoundaryTouchesImage";
    case ErrorKind::NotRepelling: return "NotRepelling";
    case ErrorKind::LiftDiscontinuity: return "LiftDiscontinuity";
    case ErrorKind::MNotFound: return "MNotFound";
    case ErrorKind::IndexMismatch: return "IndexMismatch";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

}  // namespace sphere
