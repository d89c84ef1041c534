#pragma once

#include <stdexcept>
#include <string>

namespace vqe {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid input data (bad indices, broken invariants, non-Hermitian operators).
struct ValidationError : Error {
  using Error::Error;
};

// Operand shapes disagree (string lengths, state dimensions, parameter counts).
struct DimensionError : Error {
  using Error::Error;
};

// Request exceeds a hard size cap (qubit or orbital limits).
struct CapacityError : Error {
  using Error::Error;
};

// Text input could not be parsed; carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& msg, int line_number)
      : Error("line " + std::to_string(line_number) + ": " + msg), line(line_number) {}
  int line;
};

// A metric is undefined for the given inputs (e.g. reference energy of zero).
struct MetricError : Error {
  using Error::Error;
};

// Numerical breakdown (non-finite objective values and the like).
struct NumericError : Error {
  using Error::Error;
};

// Filesystem failures, annotated with the offending path.
struct IoError : Error {
  using Error::Error;
};

}  // namespace vqe
