#pragma once

#include <stdexcept>
#include <string>

namespace peerlab {

// Invalid configuration or input file; the CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An argument outside its mathematical domain (e.g. a probability > 1).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Cross-references that do not resolve (dangling agent/module/resource ids).
class IntegrityError : public std::runtime_error {
public:
    explicit IntegrityError(const std::string& what) : std::runtime_error(what) {}
};

// Instance too large for an exhaustive computation; the CLI maps this to
// exit code 3.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// A documented invariant was observed broken at runtime (e.g. a mode
// out-producing the perfect-information benchmark).
class InvariantViolation : public std::logic_error {
public:
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// A requested target is unreachable for any parameter value (e.g. fewer
// agents than contributions needed).
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace peerlab
