#pragma once

#include <stdexcept>
#include <string>

namespace wirenoise {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Result magnitude exceeds the double range.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// A series or quadrature failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two inputs that must agree in size or spacing do not.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Circulant embedding and spectral filtering both failed.
class EmbeddingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Not enough data to perform an estimate.
class InsufficientRangeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Biot-Savart segment density too coarse for the requested accuracy.
class DiscretizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or CSV input. `key()` names the offending entry.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace wirenoise
