#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kpuf {

// All library errors derive from Error and carry a stable machine-readable
// category string; the CLI prints "ERROR:<category>:<message>" and exits 1.
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

// Argument outside its documented range, or a structurally invalid object.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& msg) : Error("domain", msg) {}
};

// Message too long for the chosen rotation count.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& msg) : Error("capacity", msg) {}
};

// Malformed input file.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error("parse", msg) {}
};

// Ciphertext symbol has no matching nibble under the supplied image.
class TamperError : public Error {
public:
    explicit TamperError(const std::string& msg) : Error("tamper", msg) {}
};

// Duplicate symbols inside a decode group made inversion ambiguous.
class DecodabilityError : public Error {
public:
    explicit DecodabilityError(const std::string& msg) : Error("decodability", msg) {}
};

// MCMC convergence diagnostics exceeded their thresholds.
class DiagnosticError : public Error {
public:
    DiagnosticError(const std::string& msg, std::vector<std::string> params)
        : Error("diagnostic", msg), offending_params_(std::move(params)) {}

    const std::vector<std::string>& offending_params() const noexcept {
        return offending_params_;
    }

private:
    std::vector<std::string> offending_params_;
};

// Data that cannot identify the model (e.g. an all-zero visit table).
class DegenerateDataError : public Error {
public:
    explicit DegenerateDataError(const std::string& msg) : Error("degenerate", msg) {}
};

// OS entropy source or similar facility unavailable.
class EnvironmentError : public Error {
public:
    explicit EnvironmentError(const std::string& msg) : Error("environment", msg) {}
};

// Filesystem failure distinct from a parse failure.
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error("io", msg) {}
};

} // namespace kpuf
