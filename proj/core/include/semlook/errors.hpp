#pragma once

#include <stdexcept>
#include <string>

namespace semlook {

// Domain errors map to exit code 1 at the CLI; anything else is a bug.
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidName : DomainError {
    using DomainError::DomainError;
};

struct DanglingOntologyRef : DomainError {
    using DomainError::DomainError;
};

struct AmbiguousInstance : DomainError {
    using DomainError::DomainError;
};

struct UnknownPage : DomainError {
    using DomainError::DomainError;
};

struct CorruptStore : DomainError {
    CorruptStore(const std::string& what, std::size_t line)
        : DomainError(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};

struct MalformedDocument : DomainError {
    using DomainError::DomainError;
};

struct FetchError : DomainError {
    using DomainError::DomainError;
};

struct SourceUnavailable : DomainError {
    using DomainError::DomainError;
};

struct TooFewTerms : DomainError {
    using DomainError::DomainError;
};

struct NoRelationalContext : DomainError {
    using DomainError::DomainError;
};

struct InvalidArgs : DomainError {
    using DomainError::DomainError;
};

struct TooLarge : DomainError {
    using DomainError::DomainError;
};

struct IoError : DomainError {
    using DomainError::DomainError;
};

}  // namespace semlook
