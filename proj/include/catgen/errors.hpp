#pragma once

#include <stdexcept>
#include <string>

namespace catgen {

/// Invalid physical or numerical input (|kappa| >= 1, negative counts,
/// out-of-range efficiencies, malformed state vectors and the like).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A conditioning event whose probability is below the representable
/// threshold (1e-14); normalizing the conditioned state would amplify
/// truncation noise beyond any useful accuracy.
class ImprobableOutcomeError : public std::runtime_error {
public:
    explicit ImprobableOutcomeError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Requested basis size cannot represent the state to the required
/// tail mass, or an operation would need amplitudes beyond n_max.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what)
        : std::runtime_error(what) {}
};

/// A series or iteration failed to reach its tolerance within the
/// iteration budget.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what)
        : std::runtime_error(what) {}
};

/// Unusable configuration file or command-line usage.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace catgen
