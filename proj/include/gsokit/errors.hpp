#pragma once

#include <stdexcept>
#include <string>

namespace gsokit {

// Every failure mode the library reports. CLI exit codes group these:
// input-shaped problems (parse, mismatched carriers, ...) versus resource
// limits; axiom violations are not errors at all, they travel in reports.
enum class ErrorKind {
  CyclicInput,
  VertexMismatch,
  ParseError,
  DuplicateOccurrence,
  NotStratified,
  CarrierMismatch,
  EmptyFamily,
  CarrierTooLarge,
  InvalidSpec,
  InvalidDecomposition,
  NotAModel,
  InvalidClassificationData,
  UnknownObservation,
  SizeLimit,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::CyclicInput: return "CyclicInput";
    case ErrorKind::VertexMismatch: return "VertexMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateOccurrence: return "DuplicateOccurrence";
    case ErrorKind::NotStratified: return "NotStratified";
    case ErrorKind::CarrierMismatch: return "CarrierMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::CarrierTooLarge: return "CarrierTooLarge";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::NotAModel: return "NotAModel";
    case ErrorKind::InvalidClassificationData: return "InvalidClassificationData";
    case ErrorKind::UnknownObservation: return "UnknownObservation";
    case ErrorKind::SizeLimit: return "SizeLimit";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gsokit
