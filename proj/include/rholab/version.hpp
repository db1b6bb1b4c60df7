#pragma once

namespace rholab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rholab
