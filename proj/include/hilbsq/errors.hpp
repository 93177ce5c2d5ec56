#pragma once

#include <stdexcept>
#include <string>

namespace hilbsq {

// Common base for every domain-level failure; callers that only need the
// category catch this.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MixedFieldError : Error {
  explicit MixedFieldError(const std::string& what) : Error(what) {}
};

struct DivisionByZeroError : Error {
  DivisionByZeroError() : Error("division by zero") {}
};

struct NotAmpleError : Error {
  explicit NotAmpleError(const std::string& what) : Error(what) {}
};

struct NotAnIsometryError : Error {
  explicit NotAnIsometryError(const std::string& what) : Error(what) {}
};

struct OrientationReversingError : Error {
  OrientationReversingError() : Error("isometry has determinant -1") {}
};

struct ConeSwappingError : Error {
  ConeSwappingError() : Error("isometry exchanges the two components of the positive cone") {}
};

struct NoFixedVectorError : Error {
  explicit NoFixedVectorError(const std::string& what) : Error(what) {}
};

struct ShapeViolationError : Error {
  explicit ShapeViolationError(const std::string& what) : Error(what) {}
};

struct NotInteriorPointError : Error {
  explicit NotInteriorPointError(const std::string& what) : Error(what) {}
};

struct DegenerateTriangleError : Error {
  explicit DegenerateTriangleError(const std::string& what) : Error(what) {}
};

struct NotBoundaryTypeError : Error {
  NotBoundaryTypeError() : Error("signature has s + t = 0; no free-product normal form") {}
};

struct BadLetterError : Error {
  explicit BadLetterError(const std::string& what) : Error(what) {}
};

}  // namespace hilbsq
