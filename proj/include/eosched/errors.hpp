#pragma once

#include <stdexcept>
#include <string>

namespace eosched {

// Scenario/schedule files that cannot be read, parsed, or that violate
// documented invariants.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem failures (open/write).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// Instances that cannot satisfy the power/rate constraints.
class InfeasibleError : public std::runtime_error {
public:
    explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace eosched
