#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace nilcascade {

/// Bad input: a malformed file, an index outside an order, a root that is
/// not positive, a formula applied outside its domain. Carries a short
/// machine-readable code and, when known, the offending input path.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string code, const std::string& message, std::string path = {})
        : std::runtime_error(message), code_(std::move(code)), path_(std::move(path)) {}

    const std::string& code() const noexcept { return code_; }
    const std::string& path() const noexcept { return path_; }

    ValidationError with_path(std::string path) const {
        return ValidationError(code_, what(), std::move(path));
    }

private:
    std::string code_;
    std::string path_;
};

/// An internal invariant failed (for example a commutator that does not
/// expand in the root basis). Never expected for valid inputs.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace nilcascade
