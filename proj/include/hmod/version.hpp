#pragma once

namespace hmod {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace hmod
