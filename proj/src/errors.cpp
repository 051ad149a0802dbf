#include "secular/errors.hpp"

namespace secular {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::SingularAtNode: return "SingularAtNode";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::Convergence: return "Convergence";
    case ErrorCode::LeadingBlockSingular: return "LeadingBlockSingular";
    case ErrorCode::BlockSingularAtEigenvalue: return "BlockSingularAtEigenvalue";
    case ErrorCode::DegenerateLift: return "DegenerateLift";
    case ErrorCode::MultiplicityMismatch: return "MultiplicityMismatch";
    case ErrorCode::NodeCollision: return "NodeCollision";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what), code_(code) {}

}  // namespace secular
