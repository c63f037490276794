#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cm {

enum class ErrorKind {
    InvalidInput,
    Precondition,
    NotFound,
    Precision,
    Unsupported,
    Format,
    InsufficientBound,
    Internal,
};

std::string_view to_string(ErrorKind kind);

// Every domain failure in the library is reported as an Error carrying a kind,
// so callers (the CLI in particular) can map failures to exit codes.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
    if (!cond) fail(kind, what);
}

inline std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidInput: return "invalid-input";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::NotFound: return "not-found";
        case ErrorKind::Precision: return "precision";
        case ErrorKind::Unsupported: return "unsupported";
        case ErrorKind::Format: return "format";
        case ErrorKind::InsufficientBound: return "insufficient-bound";
        case ErrorKind::Internal: return "internal";
    }
    return "unknown";
}

}  // namespace cm
