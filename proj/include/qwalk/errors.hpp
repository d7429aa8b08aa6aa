#ifndef QWALK_ERRORS_HPP
#define QWALK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwalk {

/// Bad user-facing input: malformed literals, mismatched dimensions,
/// norm violations.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter outside the supported range (spin label too large,
/// unsupported qubit count).
class RangeError : public std::domain_error {
public:
    explicit RangeError(const std::string& what) : std::domain_error(what) {}
};

/// The spectral-angle construction is undefined at this wave number:
/// the sine of the half rotation angle vanishes, so the rotation axis
/// is ambiguous.
class DegenerateAngleError : public std::domain_error {
public:
    DegenerateAngleError(const std::string& what, double k)
        : std::domain_error(what), k_(k) {}
    double wave_number() const noexcept { return k_; }

private:
    double k_;
};

/// The coin is at a limit where the continuous part of the long-time
/// distribution degenerates (diagonal coin, or tan(beta/2) singular).
class DegenerateCoinError : public std::domain_error {
public:
    explicit DegenerateCoinError(const std::string& what)
        : std::domain_error(what) {}
};

/// An internal exact identity failed beyond tolerance. Indicates a bug,
/// not bad input.
class ConsistencyError : public std::logic_error {
public:
    explicit ConsistencyError(const std::string& what)
        : std::logic_error(what) {}
};

} // namespace qwalk

#endif
