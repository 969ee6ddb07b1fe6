#pragma once

#include <stdexcept>
#include <string>

namespace funkvol {

enum class Errc {
  EmptyInput,
  DegenerateInput,
  DimensionTooLarge,
  TooManyVertices,
  PointNotInterior,
  OriginNotInterior,
  NonpositiveRadius,
  ToleranceNotReached,
  NotStrictlyContained,
  MapsThroughInfinity,
  DegeneratePairing,
  NotCentrallySymmetric,
  WrongFlagCount,
  MaxIterations,
  ParseError,
};

const char* errc_name(Errc c);

// Pipeline stage an error belongs to; the CLI reports it so a failing run
// names what broke (parse, geometry, quadrature, optimization).
const char* errc_stage(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace funkvol
