#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace soaxis {

enum class ErrorKind {
  Parse,
  EmptyInput,
  Config,
  DegenerateVector,
  OutOfVocabulary,
  InsufficientData,
  Numerical,
  Degenerate,
  Partition,
  SeedMissing,
  OrientationAmbiguous,
  UndefinedCorrelation,
  EmptySelection,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Every failure in the toolkit is reported through this one exception type.
// `stage` is filled in by the pipeline so a failure names the step it came from.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string stage = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& stage() const noexcept { return stage_; }
  const std::string& detail() const noexcept { return detail_; }

  Error with_stage(std::string stage) const;

 private:
  ErrorKind kind_;
  std::string stage_;
  std::string detail_;
};

}  // namespace soaxis
