#pragma once

#include <stdexcept>
#include <string>

namespace scc {

// Thrown when a request exceeds a hard enumeration or representation limit
// (the limits are spelled out in the message).
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace scc
