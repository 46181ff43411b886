#pragma once

#include <stdexcept>
#include <string>

namespace pik {

/// Malformed document: bad syntax, wrong types, unknown or missing keys.
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Well-formed document whose content violates an invariant
/// (goal references a missing body, restitution out of range, ...).
class ValidationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Action object overlaps an existing body or leaves the placement bounds.
/// Placements rejected this way are cost-free: they never consume an attempt.
class InvalidPlacement : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace pik
