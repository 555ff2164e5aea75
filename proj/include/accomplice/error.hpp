#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace accomplice {

enum class ErrorCode {
    MalformedLine,
    DuplicateEntry,
    IncompleteList,
    SizeMismatch,
    IndexOutOfRange,
    PivotInSet,
    NotAbovePivot,
    InvalidMisreport,
    InstanceTooLarge,
    InputNotStable,
    InconsistentLattice,
    EmptyPool,
    UnknownClaim,
    ConfigInvalid,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a code so callers (the CLI in
// particular) can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Parse failures additionally remember the 1-based input line (0 if the
// problem is not tied to a single line).
class ParseError : public Error {
public:
    ParseError(ErrorCode code, std::size_t line, const std::string& what)
        : Error(code, line == 0 ? what : "line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace accomplice
