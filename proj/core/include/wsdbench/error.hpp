#pragma once

#include <stdexcept>
#include <string>

namespace wsd {

/// Error type thrown by every module. Messages carry enough context
/// (line numbers, instance ids, residuals) to act on without a debugger.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wsd
