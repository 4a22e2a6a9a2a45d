#pragma once

#include <stdexcept>
#include <string>

namespace zeris {

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Formula applied outside the parameter region where it is meaningful.
struct RegimeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedModeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericalIntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Short reason code used in sweep output for cells that could not be computed.
std::string reason_code(const std::exception& e);

}  // namespace zeris
