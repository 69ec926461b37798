#pragma once

#include <stdexcept>
#include <string>

namespace wtp {

// Search for an index threshold walked past the 2^62 safety cap.
class range_exceeded : public std::runtime_error {
public:
    explicit range_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration; message aggregates every violation found.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// A result object failed one of its own structural guarantees.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace wtp
