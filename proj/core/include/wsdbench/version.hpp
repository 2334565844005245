#pragma once

namespace wsd {

inline constexpr const char* kToolVersion = "0.1.0";

/// Version tag stamped into every file format this tool writes.
/// Readers reject files whose version field does not match.
inline constexpr int kFormatVersion = 1;

} // namespace wsd
