#pragma once

#include <stdexcept>
#include <string>

namespace gradweil {

/// Shapes, variable lists or frames of two operands do not agree.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed textual or JSON input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A mathematical precondition of an operation is violated
/// (e.g. a connection that should be flat is not).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independent computations of the same object disagree.
/// This always indicates a bug in the engine.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace gradweil
