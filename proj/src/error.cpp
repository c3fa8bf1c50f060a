#include "soaxis/error.hpp"

namespace soaxis {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::DegenerateVector: return "degenerate vector";
    case ErrorKind::OutOfVocabulary: return "out of vocabulary";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::Numerical: return "numerical error";
    case ErrorKind::Degenerate: return "degenerate matrix";
    case ErrorKind::Partition: return "partition error";
    case ErrorKind::SeedMissing: return "seed missing";
    case ErrorKind::OrientationAmbiguous: return "orientation ambiguous";
    case ErrorKind::UndefinedCorrelation: return "undefined correlation";
    case ErrorKind::EmptySelection: return "empty selection";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::string& stage) {
  std::string out;
  if (!stage.empty()) out += "[" + stage + "] ";
  out += to_string(kind);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string stage)
    : std::runtime_error(compose(kind, message, stage)),
      kind_(kind),
      stage_(std::move(stage)),
      detail_(message) {}

Error Error::with_stage(std::string stage) const { return Error(kind_, detail_, std::move(stage)); }

}  // namespace soaxis
