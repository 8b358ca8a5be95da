#pragma once

#include <stdexcept>
#include <string>

namespace sigstar {

enum class ErrorCode {
    DimensionMismatch,
    InvalidArgument,
    EmptySet,
    SolverFailure,
    SplitBudgetExceeded,
    RejectionBudgetExhausted,
    Parse,
    Io,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure the library reports goes through this type. The code lets
// callers (the CLI in particular) map failures onto exit statuses without
// matching on message text.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

inline void require_dims(bool ok, const std::string& field, std::size_t expected, std::size_t got)
{
    if (!ok) {
        fail(ErrorCode::DimensionMismatch,
             field + ": expected " + std::to_string(expected) + ", got " + std::to_string(got));
    }
}

} // namespace sigstar
