#pragma once

#include <stdexcept>
#include <string>

namespace kf {

// Bad user input: malformed config, out-of-range parameters, invalid data files.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical procedure failed to converge or could not reach the requested
// accuracy (stalled quadrature refinement, missed eigenvalue brackets,
// insufficient eigenpairs for a kernel truncation).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A mathematical invariant that the library promises (and checks) was violated.
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kf
