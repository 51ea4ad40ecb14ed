#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tatesplit {

/// Selects the OpenMP kernel or the serial reference loop.
enum class Exec { serial, parallel };

/// Malformed user input (schema, flags, invariant violations of input values).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Laurent truncation did not stabilise; the cell value cannot be certified.
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ranks disagreed between the working prime and the cross-check prime.
class PrimeMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation needs cohomology cells the table does not cover.
class WindowError : public std::runtime_error {
public:
    WindowError(const std::string& what, std::vector<std::string> missing)
        : std::runtime_error(what), missing_(std::move(missing)) {}
    const std::vector<std::string>& missing() const { return missing_; }

private:
    std::vector<std::string> missing_;
};

}  // namespace tatesplit
