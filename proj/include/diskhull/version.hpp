#pragma once

namespace diskhull {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace diskhull
