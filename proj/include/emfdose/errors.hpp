#pragma once

#include <stdexcept>
#include <string>

namespace emfdose {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric argument is non-finite or outside its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Query frequency lies outside the span of a tissue table.
class FrequencyOutOfRange : public Error {
 public:
  using Error::Error;
};

/// Penetration depth requested for a medium with zero conductivity.
class LosslessMedium : public Error {
 public:
  using Error::Error;
};

/// Link-budget evaluation at non-positive distance.
class ZeroDistance : public Error {
 public:
  using Error::Error;
};

/// Evaluation point coincides with a source position.
class SourceCollocation : public Error {
 public:
  using Error::Error;
};

/// Grid bounds produce no evaluation points.
class EmptyGrid : public Error {
 public:
  using Error::Error;
};

/// No limit rule covers the queried frequency/population.
class NoRuleForFrequency : public Error {
 public:
  using Error::Error;
};

/// Steering requested on a source whose pattern cannot steer.
class NotSteerable : public Error {
 public:
  using Error::Error;
};

/// Malformed input file; the message carries "file:line:" context.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace emfdose
