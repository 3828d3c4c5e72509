#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rws {

/// Base class for every error the engine reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single field-level problem found while checking an instance document.
struct FieldError {
  std::string field;
  std::string message;
};

/// Raised when a problem instance violates its invariants. Carries every
/// problem found, not just the first.
class InstanceError : public Error {
 public:
  explicit InstanceError(std::vector<FieldError> errors);
  const std::vector<FieldError>& errors() const noexcept { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

/// Schedule or matrix shape does not agree with the instance.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Step 4 was asked to fill a block length that has no usable term.
class NoCandidateTermsError : public Error {
 public:
  NoCandidateTermsError(int block_length);
  int block_length() const noexcept { return block_length_; }

 private:
  int block_length_;
};

}  // namespace rws
