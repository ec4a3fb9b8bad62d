/**
 * @file errors.hpp
 * @brief Exception type shared by the semantic layers of the engine.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace udet {

enum class ErrorKind {
    InfeasibleConstraints,
    ContradictoryPremises,
    UndeclaredReference,
    InvalidResponse,
    ResponseSpaceTooLarge,
    NoUsableBranch,
    CorpusCorrupt,
    InvalidInstance,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Raised by operations whose preconditions hold structurally but whose
/// premises or arguments cannot be given a meaning.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace udet
