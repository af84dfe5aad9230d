#pragma once

#include <stdexcept>
#include <string>

namespace birk {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// norm construction / parsing
struct ParseError : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };
struct NonSymmetricVertices : ValidationError { using ValidationError::ValidationError; };
struct NonConvexVertices : ValidationError { using ValidationError::ValidationError; };
struct OriginNotInterior : ValidationError { using ValidationError::ValidationError; };

// orthogonality / estimation
struct DomainError : Error { using Error::Error; };
struct DegenerateDirection : Error { using Error::Error; };
struct NoCompanionFound : Error { using Error::Error; };
struct GridTooCoarse : Error { using Error::Error; };
struct SingularMap : Error { using Error::Error; };

}  // namespace birk
