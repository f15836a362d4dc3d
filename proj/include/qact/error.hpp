#pragma once

#include <stdexcept>
#include <string>

namespace qact {

enum class ErrorKind {
    InvalidParameter,
    Arithmetic,
    Resource,
    Internal,
    NotFound,
    InvalidEmbedding,
    InvalidMultiplicities,
    Numeric,
    Unsupported,
};

inline const char* to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidParameter: return "invalid-parameter";
        case ErrorKind::Arithmetic: return "arithmetic-error";
        case ErrorKind::Resource: return "resource-error";
        case ErrorKind::Internal: return "internal-error";
        case ErrorKind::NotFound: return "not-found";
        case ErrorKind::InvalidEmbedding: return "invalid-embedding";
        case ErrorKind::InvalidMultiplicities: return "invalid-multiplicities";
        case ErrorKind::Numeric: return "numeric-error";
        case ErrorKind::Unsupported: return "unsupported";
    }
    return "error";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace qact
