#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rljacobi {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure did not reach its target tolerance.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved " + format(achieved) + ")"), achieved_(achieved) {}

    double achieved() const noexcept { return achieved_; }

private:
    static std::string format(double x) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", x);
        return buf;
    }
    double achieved_;
};

/// Too few usable points for a regression.
class InsufficientDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rljacobi
