#pragma once

namespace helmholtz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace helmholtz
