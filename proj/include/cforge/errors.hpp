#pragma once

#include <stdexcept>
#include <string>

namespace cforge {

// User-facing input problems (CLI exit code 2).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A computation contradicted a certified identity (CLI exit code 1).
struct invariant_error : std::runtime_error {
    explicit invariant_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A theorem hypothesis is not satisfied by the given system (CLI exit code 3).
// This is a documented non-error: the request is well-formed but out of scope.
struct hypothesis_unmet : std::runtime_error {
    explicit hypothesis_unmet(const std::string& msg) : std::runtime_error(msg) {}
};

#define CFORGE_CHECK(cond, msg)                                   \
    do {                                                          \
        if (!(cond)) throw ::cforge::invariant_error(msg);        \
    } while (0)

#define CFORGE_REQUIRE(cond, msg)                                 \
    do {                                                          \
        if (!(cond)) throw ::cforge::input_error(msg);            \
    } while (0)

}  // namespace cforge
