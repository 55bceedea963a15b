#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stadium {

enum class ErrorKind {
    GateCountTooSmall,
    NotAPermutation,
    LengthMismatch,
    SectionOutOfRange,
    SharedEndpoint,
    NotSharedEndpoint,
    EvenGateCount,
    BudgetExceeded,
    NotAnInteriorSection,
    PostconditionViolation,
    BaseCaseReached,
    NotAllE0,
    PreconditionViolation,
    GraphTooLarge,
    MalformedCertificate,
    SyntaxError,
    SchemaError,
    NotRealizable,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class StadiumError : public std::runtime_error {
public:
    StadiumError(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace stadium
