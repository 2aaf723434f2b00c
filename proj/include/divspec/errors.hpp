#pragma once

#include <stdexcept>
#include <string>

namespace divspec {

// Thrown when a requested table or series cannot be allocated (the limit is
// rejected up front; no partially built object escapes).
struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace divspec
