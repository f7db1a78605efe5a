#pragma once

namespace kacz {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace kacz
