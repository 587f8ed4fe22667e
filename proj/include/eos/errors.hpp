#pragma once
#include <stdexcept>
#include <string>

namespace eos {

// Malformed input documents (config text, CSV tables).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Inputs that parse but violate a model invariant.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the domain where a formula is defined.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Quadrature or transform could not reach the requested tolerance.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace eos
