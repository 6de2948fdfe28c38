#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace worldline {

enum class ErrorKind {
  Domain,
  ChartSingular,
  NotTimelike,
  DegenerateOsculating,
  VertexOnSegment,
  InvalidPhaseParams,
  StepSizeUnderflow,
  ConstraintViolated,
  DegenerateSpectrum,
  AlphaOutOfRange,
  SingularPoint,
  PoleOnPath,
  DegenerateVectors,
  SingularMatrix,
  MalformedInput,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Validation errors are caused by bad input; the rest are numerical failures.
bool is_validation_error(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace worldline
