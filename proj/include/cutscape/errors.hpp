#pragma once

#include <stdexcept>
#include <string>

namespace cutscape {

// Bad arguments, malformed files, dimension mismatches. CLI exit code 2.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Refusal to start an exponential-cost computation over a configured cap.
// CLI exit code 3.
class cap_error : public std::runtime_error {
public:
    explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values where the math guarantees finite ones (e.g. NaN from an
// objective callback). Never caught internally.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace cutscape
