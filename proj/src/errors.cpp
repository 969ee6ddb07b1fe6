#include "funkvol/errors.hpp"

namespace funkvol {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::DimensionTooLarge: return "DimensionTooLarge";
    case Errc::TooManyVertices: return "TooManyVertices";
    case Errc::PointNotInterior: return "PointNotInterior";
    case Errc::OriginNotInterior: return "OriginNotInterior";
    case Errc::NonpositiveRadius: return "NonpositiveRadius";
    case Errc::ToleranceNotReached: return "ToleranceNotReached";
    case Errc::NotStrictlyContained: return "NotStrictlyContained";
    case Errc::MapsThroughInfinity: return "MapsThroughInfinity";
    case Errc::DegeneratePairing: return "DegeneratePairing";
    case Errc::NotCentrallySymmetric: return "NotCentrallySymmetric";
    case Errc::WrongFlagCount: return "WrongFlagCount";
    case Errc::MaxIterations: return "MaxIterations";
    case Errc::ParseError: return "ParseError";
  }
  return "UnknownError";
}

const char* errc_stage(Errc c) {
  switch (c) {
    case Errc::EmptyInput:
    case Errc::DimensionTooLarge:
    case Errc::TooManyVertices:
    case Errc::ParseError:
      return "parse";
    case Errc::DegenerateInput:
    case Errc::PointNotInterior:
    case Errc::OriginNotInterior:
    case Errc::NonpositiveRadius:
    case Errc::NotStrictlyContained:
    case Errc::MapsThroughInfinity:
    case Errc::DegeneratePairing:
    case Errc::NotCentrallySymmetric:
    case Errc::WrongFlagCount:
      return "geometry";
    case Errc::ToleranceNotReached:
      return "quadrature";
    case Errc::MaxIterations:
      return "optimization";
  }
  return "internal";
}

}  // namespace funkvol
