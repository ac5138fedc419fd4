#pragma once

namespace ito {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ito
