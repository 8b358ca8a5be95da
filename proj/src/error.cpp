#include "sigstar/error.hpp"

namespace sigstar {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::EmptySet: return "empty set";
    case ErrorCode::SolverFailure: return "solver failure";
    case ErrorCode::SplitBudgetExceeded: return "split budget exceeded";
    case ErrorCode::RejectionBudgetExhausted: return "rejection budget exhausted";
    case ErrorCode::Parse: return "parse error";
    case ErrorCode::Io: return "i/o error";
    }
    return "error";
}

} // namespace sigstar
