#pragma once

namespace semcom {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace semcom
