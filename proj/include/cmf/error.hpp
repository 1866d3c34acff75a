#pragma once

#include <stdexcept>
#include <string>

namespace cmf {

// Domain error carrying a stable kind tag (e.g. "NotTotallyReal").
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Usage errors (bad flags, malformed inputs) as opposed to mathematical failures.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cmf
