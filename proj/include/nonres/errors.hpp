#pragma once

#include <stdexcept>
#include <string>

namespace nonres {

// Modulus too large for table-backed evaluation; callers should switch to
// the quadratic (Jacobi) fast path or raise the table limit.
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

// A bounded search ran out of room. With the default limits this indicates
// a program error, not a mathematical possibility, so it is surfaced loudly.
struct search_limit_error : std::runtime_error {
    explicit search_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// The hypothesis of a conditional check failed; distinct from the checked
// inequality itself failing.
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nonres
