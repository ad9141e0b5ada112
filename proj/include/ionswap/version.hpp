#pragma once

namespace ionswap {

inline constexpr const char* kToolVersion = "1.0.0";

// Internal unit system stamped into every emitted file.
inline constexpr const char* kUnitSystem = "amu,um,us (energy amu*um^2/us^2)";

}  // namespace ionswap
