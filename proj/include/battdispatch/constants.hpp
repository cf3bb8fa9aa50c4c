#pragma once

namespace battd {

// Physical constants (CODATA). Fixed built-ins, not user parameters.
inline constexpr double kGasConstant = 8.314462618;   // J mol^-1 K^-1
inline constexpr double kFaraday = 96485.33212;       // s A mol^-1

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace battd
